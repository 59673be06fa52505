#pragma once

// Counts of discrete interval sets: sets of k distinct nonzero rows of
// length n that together form a valid sensor matrix for a regime.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "convex1d/core.hpp"
#include "convex1d/errors.hpp"

namespace convex1d {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial in x and y with exact integer coefficients, truncated to
/// x-degree <= N and y-degree <= K. Every operation drops terms past the caps.
class BivariatePoly {
 public:
  BivariatePoly(std::size_t x_cap, std::size_t y_cap)
      : n_(x_cap), k_(y_cap), c_((x_cap + 1) * (y_cap + 1)) {}

  static BivariatePoly constant(std::size_t x_cap, std::size_t y_cap, const BigInt& v) {
    BivariatePoly p(x_cap, y_cap);
    p.at(0, 0) = v;
    return p;
  }

  std::size_t x_cap() const noexcept { return n_; }
  std::size_t y_cap() const noexcept { return k_; }

  BigInt& at(std::size_t i, std::size_t j) { return c_[i * (k_ + 1) + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const { return c_[i * (k_ + 1) + j]; }

  /// Coefficient of x^i y^j; zero past the caps.
  BigInt coeff(std::size_t i, std::size_t j) const { return i <= n_ && j <= k_ ? at(i, j) : BigInt(0); }

  BivariatePoly& operator+=(const BivariatePoly& o) {
    require_same_caps(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }

  BivariatePoly& operator-=(const BivariatePoly& o) {
    require_same_caps(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }

  friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
  friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly& b) { return a -= b; }

  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
    a.require_same_caps(b);
    BivariatePoly r(a.n_, a.k_);
    for (std::size_t i1 = 0; i1 <= a.n_; ++i1) {
      for (std::size_t j1 = 0; j1 <= a.k_; ++j1) {
        const BigInt& u = a.at(i1, j1);
        if (u == 0) continue;
        for (std::size_t i2 = 0; i1 + i2 <= a.n_; ++i2) {
          for (std::size_t j2 = 0; j1 + j2 <= a.k_; ++j2) {
            const BigInt& v = b.at(i2, j2);
            if (v != 0) r.at(i1 + i2, j1 + j2) += u * v;
          }
        }
      }
    }
    return r;
  }

  /// Multiplies by x^d.
  BivariatePoly shifted_x(std::size_t d) const {
    BivariatePoly r(n_, k_);
    for (std::size_t i = 0; i + d <= n_; ++i) {
      for (std::size_t j = 0; j <= k_; ++j) r.at(i + d, j) = at(i, j);
    }
    return r;
  }

  BivariatePoly scaled(const BigInt& s) const {
    BivariatePoly r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
  }

  /// The x^i coefficient as a polynomial in y evaluated at y = v.
  BigInt eval_y(std::size_t i, const BigInt& v) const {
    BigInt acc = 0;
    for (std::size_t j = k_ + 1; j-- > 0;) acc = acc * v + at(i, j);
    return acc;
  }

  friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

 private:
  void require_same_caps(const BivariatePoly& o) const {
    if (n_ != o.n_ || k_ != o.k_) throw PreconditionError("polynomials with different truncation caps");
  }

  std::size_t n_;
  std::size_t k_;
  std::vector<BigInt> c_;
};

/// c[n][k] for n <= N, k <= K.
struct CountTable {
  Regime regime;
  std::vector<std::vector<BigInt>> c;

  std::size_t max_n() const noexcept { return c.empty() ? 0 : c.size() - 1; }
  std::size_t max_k() const noexcept { return c.empty() ? 0 : c.front().size() - 1; }
  BigInt at(std::size_t n, std::size_t k) const { return n < c.size() && k < c[n].size() ? c[n][k] : BigInt(0); }

  /// Sum over the tracked k; the full total when K covers every row.
  BigInt total(std::size_t n) const {
    BigInt t = 0;
    for (const auto& v : c.at(n)) t += v;
    return t;
  }
};

inline BigInt binomial(const BigInt& n, std::size_t k) {
  if (n < 0 || BigInt(k) > n) return 0;
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

/// Number of nonzero discrete intervals of length n.
inline std::size_t row_universe_size(std::size_t n, Geometry geometry) {
  if (geometry == Geometry::line) return n * (n + 1) / 2;
  return n == 0 ? 0 : n * n - n + 1;
}

/// Sparse sets: every subset of valid rows works.
inline BigInt count_sparse(std::size_t n, std::size_t k, Geometry geometry) {
  if (geometry == Geometry::circle && n < 2) return n == 0 ? BigInt(k == 0 ? 1 : 0) : binomial(1, k);
  return binomial(BigInt(row_universe_size(n, geometry)), k);
}

namespace detail {

/// (1+y)^i - 1 as a y-polynomial with x-degree 0.
inline BivariatePoly meet_weight(std::size_t i, std::size_t N, std::size_t K) {
  BivariatePoly a(N, K);
  for (std::size_t j = 1; j <= std::min(i, K); ++j) a.at(0, j) = binomial(BigInt(i), j);
  return a;
}

/// sum_t C(m+t, t) a^t x^t, i.e. 1/(1 - a x)^(m+1), truncated.
inline BivariatePoly inverse_power(const BivariatePoly& a, std::size_t m) {
  const std::size_t N = a.x_cap();
  BivariatePoly out(N, a.y_cap());
  BivariatePoly power = BivariatePoly::constant(N, a.y_cap(), 1);
  for (std::size_t t = 0; t <= N; ++t) {
    out += power.shifted_x(t).scaled(binomial(BigInt(m + t), t));
    power = power * a;
  }
  return out;
}

inline CountTable table_of(const BivariatePoly& f, Regime regime) {
  CountTable t{regime, {}};
  for (std::size_t n = 0; n <= f.x_cap(); ++n) {
    t.c.emplace_back();
    for (std::size_t k = 0; k <= f.y_cap(); ++k) t.c.back().push_back(f.at(n, k));
  }
  return t;
}

}  // namespace detail

/// Generating function of the dense line counts, as a polynomial:
/// sum_m x^m / prod_{i=1}^{m+1} (1 - a_i x), a_i = (1+y)^i - 1.
inline BivariatePoly gf_dense_linear_poly(std::size_t N, std::size_t K) {
  BivariatePoly f(N, K);
  BivariatePoly prod = BivariatePoly::constant(N, K, 1);
  for (std::size_t m = 0; m <= N; ++m) {
    prod = prod * detail::inverse_power(detail::meet_weight(m + 1, N, K), 0);
    f += prod.shifted_x(m);
  }
  return f;
}

/// Generating function of the dense circle counts: (1+y) h - y, where
/// h = 1 + sum_{m>=1} x^m / (1 - a_m x)^(m+1) counts the sets without the
/// all-one row and (1+y) accounts for that row. At y = 1 this is 2h - 1.
inline BivariatePoly gf_dense_circular_poly(std::size_t N, std::size_t K) {
  BivariatePoly h = BivariatePoly::constant(N, K, 1);
  for (std::size_t m = 1; m <= N; ++m) {
    h += detail::inverse_power(detail::meet_weight(m, N, K), m).shifted_x(m);
  }
  BivariatePoly one_plus_y = BivariatePoly::constant(N, K, 1);
  BivariatePoly y(N, K);
  if (K >= 1) {
    one_plus_y.at(0, 1) = 1;
    y.at(0, 1) = 1;
  }
  return one_plus_y * h - y;
}

inline CountTable gf_dense_linear(std::size_t N, std::size_t K) {
  return detail::table_of(gf_dense_linear_poly(N, K), kHCO);
}

inline CountTable gf_dense_circular(std::size_t N, std::size_t K) {
  return detail::table_of(gf_dense_circular_poly(N, K), kHCCO);
}

/// Dense-regime count table, dispatching on geometry.
inline CountTable gf_dense(std::size_t N, std::size_t K, Geometry geometry) {
  return geometry == Geometry::line ? gf_dense_linear(N, K) : gf_dense_circular(N, K);
}

inline CountTable sparse_table(std::size_t N, std::size_t K, Geometry geometry) {
  CountTable t{{geometry, Density::sparse}, {}};
  for (std::size_t n = 0; n <= N; ++n) {
    t.c.emplace_back();
    for (std::size_t k = 0; k <= K; ++k) t.c.back().push_back(count_sparse(n, k, geometry));
  }
  return t;
}

/// Largest possible k for length-n rows; K at least this gives full totals.
inline std::size_t max_rows(std::size_t n, Geometry geometry) { return row_universe_size(n, geometry); }

// ---------------------------------------------------------------------------
// Brute-force oracles

inline constexpr std::size_t kBruteForceMaxN = 12;

/// Every nonzero discrete interval of length n, found by scanning all 2^n words.
inline std::vector<BitVector> all_interval_rows(std::size_t n, Geometry geometry) {
  if (n > kBruteForceMaxN) throw SizeLimit("row enumeration limited to n <= 12");
  std::vector<BitVector> rows;
  for (std::uint32_t bits = 1; bits < (1U << n); ++bits) {
    BitVector r(n);
    for (std::size_t i = 0; i < n; ++i) {
      if ((bits >> i) & 1U) r.set(i);
    }
    if (is_discrete_interval(r, geometry)) rows.push_back(std::move(r));
  }
  return rows;
}

/// Sparse counts by k from the enumerated rows: coefficients of (1+y)^rows.
inline std::vector<BigInt> brute_force_sparse(std::size_t n, Geometry geometry) {
  const auto rows = all_interval_rows(n, geometry);
  std::vector<BigInt> counts{1};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    counts.push_back(0);
    for (std::size_t k = counts.size() - 1; k > 0; --k) counts[k] += counts[k - 1];
  }
  return counts;
}

/// Dense counts by k: subsets of rows with no r1, r2 where g(r1) = f(r2).
/// Entry k is the number of valid k-sets; the vector spans k = 0..#rows.
inline std::vector<BigInt> brute_force_dense(std::size_t n, Geometry geometry) {
  if (n > kBruteForceMaxN) throw SizeLimit("brute_force_dense is limited to n <= 12");
  struct Stat {
    std::uint32_t f_bit;
    std::uint32_t g_bit;
  };
  std::vector<Stat> stats;
  bool has_all_one = false;
  for (const auto& r : all_interval_rows(n, geometry)) {
    if (geometry == Geometry::circle && r.all()) {
      has_all_one = true;  // no f or g; compatible with every row
      continue;
    }
    const RowStats s = row_stats(r, geometry);
    stats.push_back({1U << s.f, 1U << s.g});
  }

  std::vector<std::uint64_t> by_size(stats.size() + 1, 0);
  // Each call counts its own set once, then extends it by later rows only.
  auto extend = [&](auto&& self, std::size_t from, std::uint32_t fs, std::uint32_t gs, std::size_t size) -> void {
    ++by_size[size];
    for (std::size_t j = from; j < stats.size(); ++j) {
      const auto& s = stats[j];
      if ((fs & s.g_bit) || (gs & s.f_bit)) continue;
      self(self, j + 1, fs | s.f_bit, gs | s.g_bit, size + 1);
    }
  };
  extend(extend, 0, 0, 0, 0);

  std::vector<BigInt> counts(by_size.begin(), by_size.end());
  if (has_all_one) {
    counts.push_back(0);
    for (std::size_t k = counts.size() - 1; k > 0; --k) counts[k] += counts[k - 1];
  }
  return counts;
}

inline constexpr std::size_t kSubspaceMaxDim = 6;

/// Subspaces of F_2^dim whose vectors together touch every coordinate.
inline BigInt count_full_support_subspaces(std::size_t dim) {
  if (dim > kSubspaceMaxDim) throw SizeLimit("subspace enumeration limited to dim <= 6");
  const std::uint32_t space = 1U << dim;
  // A subspace is the bitmask of its member vectors.
  using Members = std::uint64_t;
  auto span_with = [&](Members s, std::uint32_t v) {
    Members out = s;
    for (std::uint32_t u = 0; u < space; ++u) {
      if ((s >> u) & 1U) out |= Members{1} << (u ^ v);
    }
    return out;
  };
  std::set<Members> seen{Members{1}};
  std::vector<Members> frontier{Members{1}};
  while (!frontier.empty()) {
    std::vector<Members> next;
    for (Members s : frontier) {
      for (std::uint32_t v = 1; v < space; ++v) {
        if ((s >> v) & 1U) continue;
        const Members t = span_with(s, v);
        if (seen.insert(t).second) next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  BigInt count = 0;
  for (Members s : seen) {
    std::uint32_t support = 0;
    for (std::uint32_t u = 0; u < space; ++u) {
      if ((s >> u) & 1U) support |= u;
    }
    if (support == space - 1) ++count;
  }
  return count;
}

}  // namespace convex1d

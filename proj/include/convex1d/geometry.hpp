#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "convex1d/core.hpp"
#include "convex1d/errors.hpp"

namespace convex1d {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Always "p/q", with q >= 1.
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// Accepts "p/q", integers and finite decimals such as "-0.25".
inline Rational parse_rational(std::string_view s) {
  auto fail = [&]() -> Rational { throw PreconditionError("not a rational number: '" + std::string(s) + "'"); };
  auto digits_only = [](std::string_view t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) return fail();
    const BigInt d{std::string(den)};
    if (d == 0) return fail();
    value = Rational(BigInt(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !digits_only(whole)) || !digits_only(frac) || (whole.empty() && frac.empty())) {
      return fail();
    }
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const BigInt w = whole.empty() ? BigInt(0) : BigInt(std::string(whole));
    value = Rational(w * scale + BigInt(std::string(frac)), scale);
  } else {
    if (!digits_only(body)) return fail();
    value = Rational(BigInt(std::string(body)));
  }
  return negative ? Rational(-value) : value;
}

namespace detail {

/// r mod 1, in [0, 1).
inline Rational frac(const Rational& r) {
  const BigInt& n = boost::multiprecision::numerator(r);
  const BigInt& d = boost::multiprecision::denominator(r);
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return r - Rational(q);
}

}  // namespace detail

enum class IntervalKind { proper, empty, whole };

/// One end of an interval. Infinite ends exist only on the line.
struct Endpoint {
  Rational value;
  bool closed = false;
  bool infinite = false;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// An interval on the line or an arc on the unit-circumference circle [0,1).
/// Arcs run from lo upward to hi and wrap past 1 when lo > hi.
struct Interval1D {
  IntervalKind kind = IntervalKind::empty;
  Endpoint lo;
  Endpoint hi;

  static Interval1D empty() { return {}; }
  static Interval1D whole() { return {IntervalKind::whole, {}, {}}; }
  static Interval1D make(Rational lo, bool lo_closed, Rational hi, bool hi_closed) {
    return {IntervalKind::proper, {std::move(lo), lo_closed, false}, {std::move(hi), hi_closed, false}};
  }
  static Interval1D open(Rational lo, Rational hi) { return make(std::move(lo), false, std::move(hi), false); }
  static Interval1D closed(Rational lo, Rational hi) { return make(std::move(lo), true, std::move(hi), true); }
  /// [lo, hi)
  static Interval1D half_open(Rational lo, Rational hi) { return make(std::move(lo), true, std::move(hi), false); }
  static Interval1D left_ray(Rational hi, bool hi_closed) {
    return {IntervalKind::proper, {Rational(0), false, true}, {std::move(hi), hi_closed, false}};
  }
  static Interval1D right_ray(Rational lo, bool lo_closed) {
    return {IntervalKind::proper, {std::move(lo), lo_closed, false}, {Rational(0), false, true}};
  }

  bool is_proper() const noexcept { return kind == IntervalKind::proper; }
  bool is_open() const noexcept { return is_proper() && (lo.infinite || !lo.closed) && (hi.infinite || !hi.closed); }
  bool is_closed() const noexcept { return is_proper() && !lo.infinite && !hi.infinite && lo.closed && hi.closed; }

  friend bool operator==(const Interval1D& a, const Interval1D& b) {
    if (a.kind != b.kind) return false;
    return a.kind != IntervalKind::proper || (a.lo == b.lo && a.hi == b.hi);
  }
};

inline void validate(const Interval1D& iv, Geometry geometry) {
  if (!iv.is_proper()) return;
  const auto& lo = iv.lo;
  const auto& hi = iv.hi;
  if (geometry == Geometry::circle) {
    if (lo.infinite || hi.infinite) throw DegenerateInterval("arcs cannot have infinite ends");
    for (const auto* e : {&lo, &hi}) {
      if (e->value < 0 || e->value >= 1) throw DegenerateInterval("arc end outside [0,1): " + to_string(e->value));
    }
    if (lo.value == hi.value && !(lo.closed && hi.closed)) {
      throw DegenerateInterval("arc with equal ends must be a closed point");
    }
    return;
  }
  if (lo.infinite || hi.infinite) return;
  if (lo.value > hi.value || (lo.value == hi.value && !(lo.closed && hi.closed))) {
    throw DegenerateInterval("interval with lo " + to_string(lo.value) + " and hi " + to_string(hi.value));
  }
}

inline bool contains(const Interval1D& iv, const Rational& p, Geometry geometry) {
  switch (iv.kind) {
    case IntervalKind::empty: return false;
    case IntervalKind::whole: return true;
    case IntervalKind::proper: break;
  }
  const bool after_lo = iv.lo.infinite || p > iv.lo.value || (iv.lo.closed && p == iv.lo.value);
  const bool before_hi = iv.hi.infinite || p < iv.hi.value || (iv.hi.closed && p == iv.hi.value);
  if (geometry == Geometry::circle && iv.lo.value > iv.hi.value) return after_lo || before_hi;
  return after_lo && before_hi;
}

class IntervalArrangement {
 public:
  explicit IntervalArrangement(Geometry geometry = Geometry::line) : geometry_(geometry) {}
  IntervalArrangement(Geometry geometry, std::vector<Interval1D> intervals)
      : geometry_(geometry), intervals_(std::move(intervals)) {
    for (const auto& iv : intervals_) validate(iv, geometry_);
  }

  void add(Interval1D iv) {
    validate(iv, geometry_);
    intervals_.push_back(std::move(iv));
  }

  Geometry geometry() const noexcept { return geometry_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  const Interval1D& operator[](std::size_t i) const { return intervals_.at(i); }
  const std::vector<Interval1D>& intervals() const noexcept { return intervals_; }

  friend bool operator==(const IntervalArrangement&, const IntervalArrangement&) = default;

 private:
  Geometry geometry_;
  std::vector<Interval1D> intervals_;
};

/// Sensor positions in increasing order; on the circle they lie in [0,1).
class SensorSet {
 public:
  SensorSet() = default;
  explicit SensorSet(std::vector<Rational> positions, Geometry geometry = Geometry::line)
      : positions_(std::move(positions)) {
    for (std::size_t i = 1; i < positions_.size(); ++i) {
      if (!(positions_[i - 1] < positions_[i])) throw PreconditionError("sensor positions must strictly increase");
    }
    if (geometry == Geometry::circle) {
      for (const auto& p : positions_) {
        if (p < 0 || p >= 1) throw PreconditionError("circle sensors must lie in [0,1)");
      }
    }
  }

  std::size_t size() const noexcept { return positions_.size(); }
  bool empty() const noexcept { return positions_.empty(); }
  const Rational& operator[](std::size_t i) const { return positions_.at(i); }
  const std::vector<Rational>& positions() const noexcept { return positions_; }

  friend bool operator==(const SensorSet&, const SensorSet&) = default;

 private:
  std::vector<Rational> positions_;
};

inline BitVector evaluate_codeword(const IntervalArrangement& arr, const Rational& p) {
  BitVector w(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (contains(arr[i], p, arr.geometry())) w.set(i);
  }
  return w;
}

struct SparseExtraction {
  Code code;
  SensorMatrix matrix;
};

inline SparseExtraction extract_code_sparse(const IntervalArrangement& arr, const SensorSet& sensors) {
  if (sensors.empty()) throw PreconditionError("sparse extraction needs at least one sensor");
  std::vector<BitVector> cols;
  cols.reserve(sensors.size());
  for (const auto& s : sensors.positions()) cols.push_back(evaluate_codeword(arr, s));
  SensorMatrix m = SensorMatrix::from_columns(arr.size(), cols, arr.geometry());
  return {Code(arr.size(), cols.begin(), cols.end()), std::move(m)};
}

namespace detail {

inline std::vector<Rational> endpoint_values(const IntervalArrangement& arr) {
  std::vector<Rational> v;
  for (const auto& iv : arr.intervals()) {
    if (!iv.is_proper()) continue;
    if (!iv.lo.infinite) v.push_back(iv.lo.value);
    if (!iv.hi.infinite) v.push_back(iv.hi.value);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// One point per elementary region plus every endpoint.
inline std::vector<Rational> sample_points(const IntervalArrangement& arr) {
  const auto v = endpoint_values(arr);
  if (v.empty()) return {Rational(0)};
  std::vector<Rational> pts(v.begin(), v.end());
  for (std::size_t i = 0; i + 1 < v.size(); ++i) pts.push_back((v[i] + v[i + 1]) / 2);
  if (arr.geometry() == Geometry::line) {
    pts.push_back(v.front() - 1);
    pts.push_back(v.back() + 1);
  } else {
    pts.push_back(frac((v.back() + v.front() + 1) / 2));
  }
  return pts;
}

}  // namespace detail

/// Every codeword attained anywhere in the ambient space.
inline Code extract_code_dense(const IntervalArrangement& arr) {
  Code code(arr.size());
  for (const auto& p : detail::sample_points(arr)) code.insert(evaluate_codeword(arr, p));
  return code;
}

struct Realization {
  IntervalArrangement arrangement;
  SensorSet sensors;
};

/// Open-interval realization of a matrix satisfying the regime. Line
/// sensors sit at 1..n and a block i..j becomes (i - 1/4, j + 1/4); in the
/// dense regime a block touching either end runs off to infinity so the
/// outer regions read the end columns. Circle sensors sit at (t-1)/n with
/// margin 1/(4n). All-zero rows become Empty and all-one rows Whole.
inline Realization realize_matrix(const SensorMatrix& m, Regime regime) {
  if (!regime_check(m, regime)) {
    throw RegimeViolation(std::string("matrix is not ") + std::string(regime_name(regime)));
  }
  const std::size_t n = m.cols();
  const bool dense = regime.density == Density::dense;
  std::vector<Rational> pos;
  IntervalArrangement arr(regime.geometry);

  if (regime.geometry == Geometry::line) {
    for (std::size_t t = 1; t <= n; ++t) pos.emplace_back(static_cast<long long>(t));
    const Rational eps(1, 4);
    for (const auto& r : m.row_vectors()) {
      if (r.none()) {
        arr.add(Interval1D::empty());
        continue;
      }
      if (r.all()) {
        arr.add(Interval1D::whole());
        continue;
      }
      const RowStats s = row_stats(r, Geometry::line);
      const std::size_t first = s.g + 1;
      const std::size_t last = s.f;
      Interval1D iv = Interval1D::open(Rational(static_cast<long long>(first)) - eps,
                                       Rational(static_cast<long long>(last)) + eps);
      if (dense && first == 1) iv.lo = {Rational(0), false, true};
      if (dense && last == n) iv.hi = {Rational(0), false, true};
      arr.add(std::move(iv));
    }
  } else {
    const Rational step(1, static_cast<long long>(std::max<std::size_t>(n, 1)));
    for (std::size_t t = 0; t < n; ++t) pos.push_back(step * static_cast<long long>(t));
    const Rational eps = step / 4;
    for (const auto& r : m.row_vectors()) {
      if (r.none()) {
        arr.add(Interval1D::empty());
        continue;
      }
      if (r.all()) {
        arr.add(Interval1D::whole());
        continue;
      }
      const RowStats s = row_stats(r, Geometry::circle);
      const std::size_t start = s.g % n;  // 0-based first sensor of the block
      const std::size_t end = s.f - 1;    // 0-based last sensor of the block
      arr.add(Interval1D::open(detail::frac(pos[start] - eps), detail::frac(pos[end] + eps)));
    }
  }
  Realization out{std::move(arr), SensorSet(std::move(pos), regime.geometry)};
  if (n > 0 && extract_code_sparse(out.arrangement, out.sensors).matrix != m) {
    throw std::logic_error("realization does not reproduce its matrix");
  }
  if (n > 0 && dense && extract_code_dense(out.arrangement) != m.column_set()) {
    throw std::logic_error("realization reads codewords outside the column set");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interval-type normalizations

namespace detail {

/// Smallest positive distance between distinct values (cyclic on the circle).
inline std::optional<Rational> min_gap(std::vector<Rational> v, Geometry geometry) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::optional<Rational> best;
  auto offer = [&](const Rational& g) {
    if (!best || g < *best) best = g;
  };
  for (std::size_t i = 0; i + 1 < v.size(); ++i) offer(v[i + 1] - v[i]);
  if (geometry == Geometry::circle && !v.empty()) offer(v.front() + 1 - v.back());
  return best;
}

inline Rational place(const Rational& r, Geometry geometry) {
  return geometry == Geometry::circle ? frac(r) : r;
}

/// Moves each finite end that needs retyping by eps, outward when it
/// becomes open and inward when it becomes closed.
inline Interval1D retype(const Interval1D& iv, const Rational& eps, bool lo_closed, bool hi_closed,
                         Geometry geometry) {
  if (!iv.is_proper()) return iv;
  Interval1D out = iv;
  if (!iv.lo.infinite && iv.lo.closed != lo_closed) {
    out.lo = {place(lo_closed ? Rational(iv.lo.value + eps) : Rational(iv.lo.value - eps), geometry), lo_closed, false};
  }
  if (!iv.hi.infinite && iv.hi.closed != hi_closed) {
    out.hi = {place(hi_closed ? Rational(iv.hi.value - eps) : Rational(iv.hi.value + eps), geometry), hi_closed, false};
  }
  return out;
}

inline IntervalArrangement swap_types(const IntervalArrangement& arr, bool want_closed) {
  for (const auto& iv : arr.intervals()) {
    if (!iv.is_proper()) continue;
    const bool ok = want_closed ? iv.is_open() : iv.is_closed();
    if (!ok) throw DegenerateInterval(want_closed ? "expected open intervals" : "expected closed intervals");
  }
  const auto gap = min_gap(endpoint_values(arr), arr.geometry());
  const Rational eps = gap ? *gap / 4 : Rational(1, 4);
  IntervalArrangement out(arr.geometry());
  for (const auto& iv : arr.intervals()) {
    if (want_closed && iv.is_proper() && !iv.lo.infinite && !iv.hi.infinite) {
      Rational len = iv.hi.value - iv.lo.value;
      if (arr.geometry() == Geometry::circle && len <= 0) len += 1;
      if (len <= 2 * eps) throw DegenerateInterval("interval collapses when shrunk by " + to_string(eps));
    }
    out.add(retype(iv, eps, want_closed, want_closed, arr.geometry()));
  }
  return out;
}

}  // namespace detail

/// Shrinks every open interval by a quarter of the smallest endpoint gap
/// and closes it. The dense code is unchanged.
inline IntervalArrangement open_to_closed(const IntervalArrangement& arr) { return detail::swap_types(arr, true); }

/// Widens every closed interval by a quarter of the smallest endpoint gap
/// and opens it. The dense code is unchanged.
inline IntervalArrangement closed_to_open(const IntervalArrangement& arr) { return detail::swap_types(arr, false); }

/// Changes endpoint types to the requested ones without changing which
/// sensors each interval covers, so the sparse code is unchanged.
inline IntervalArrangement retype_for_sensors(const IntervalArrangement& arr, const SensorSet& sensors,
                                              bool lo_closed, bool hi_closed) {
  auto values = detail::endpoint_values(arr);
  values.insert(values.end(), sensors.positions().begin(), sensors.positions().end());
  const auto gap = detail::min_gap(std::move(values), arr.geometry());
  const Rational eps = gap ? *gap / 4 : Rational(1, 4);
  IntervalArrangement out(arr.geometry());
  for (const auto& iv : arr.intervals()) out.add(detail::retype(iv, eps, lo_closed, hi_closed, arr.geometry()));
  return out;
}

/// Rounds every interval to [s_a, s_{b+1}) where s_a..s_b are the sensors it
/// covers. Intervals covering no sensor become Empty; arcs covering all of
/// them become Whole. On the line the interval reaching the last sensor
/// becomes a right ray, and one reaching the first sensor becomes a left
/// ray unless the zero word is already read somewhere. This makes the dense
/// code of the result equal to the sparse code of the input.
inline IntervalArrangement normalize_arbitrary(const IntervalArrangement& arr, const SensorSet& sensors) {
  if (sensors.empty()) throw PreconditionError("normalization needs at least one sensor");
  const auto extracted = extract_code_sparse(arr, sensors);
  const bool zero_read = extracted.code.contains(BitVector(arr.size()));
  const std::size_t m = sensors.size();
  const auto& s = sensors.positions();
  IntervalArrangement out(arr.geometry());

  for (std::size_t i = 0; i < arr.size(); ++i) {
    const BitVector& row = extracted.matrix.row(i);
    if (row.none()) {
      out.add(Interval1D::empty());
      continue;
    }
    if (arr.geometry() == Geometry::circle) {
      if (row.all()) {
        out.add(Interval1D::whole());
        continue;
      }
      const RowStats st = row_stats(row, Geometry::circle);
      out.add(Interval1D::half_open(s[st.g % m], s[st.f % m]));
      continue;
    }
    const RowStats st = row_stats(row, Geometry::line);
    const std::size_t a = st.g;
    const std::size_t b = st.f - 1;
    const bool left_ray = a == 0 && !zero_read;
    const bool right_ray = b + 1 == m;
    if (left_ray && right_ray) {
      out.add(Interval1D::whole());
    } else if (left_ray) {
      out.add(Interval1D::left_ray(s[b + 1], false));
    } else if (right_ray) {
      out.add(Interval1D::right_ray(s[a], true));
    } else {
      out.add(Interval1D::half_open(s[a], s[b + 1]));
    }
  }
  return out;
}

}  // namespace convex1d

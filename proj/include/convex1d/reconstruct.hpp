#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "convex1d/core.hpp"
#include "convex1d/ordering.hpp"

namespace convex1d {

enum class Status { feasible, infeasible, unsupported };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::feasible: return "feasible";
    case Status::infeasible: return "infeasible";
    case Status::unsupported: return "unsupported";
  }
  return "";
}

/// A decision plus its payload, which is present exactly when feasible.
template <class T>
struct Outcome {
  Status status = Status::infeasible;
  std::optional<T> value;
  std::string note;

  static Outcome feasible(T v) { return {Status::feasible, std::move(v), {}}; }
  static Outcome infeasible(std::string why = {}) { return {Status::infeasible, std::nullopt, std::move(why)}; }
  static Outcome unsupported(std::string why) { return {Status::unsupported, std::nullopt, std::move(why)}; }
};

/// Column sequence in which every word of `support` occurs at least once.
struct Multiordering {
  std::size_t k = 0;
  std::vector<BitVector> columns;
  Code support;

  SensorMatrix matrix(Geometry geometry = Geometry::line) const {
    return SensorMatrix::from_columns(k, columns, geometry);
  }
};

namespace detail {

[[noreturn]] inline void self_check_failed(const std::string& what) {
  throw std::logic_error("reconstruction self-check failed: " + what);
}

inline CodeMultiset multiset_of(std::size_t k, const std::vector<BitVector>& columns) {
  CodeMultiset ms(k);
  for (const auto& c : columns) ms.add(c);
  return ms;
}

/// Inserts x AND y between every adjacent inharmonious pair of a CO
/// ordering. Fails if some meet is not a word of the code.
inline std::optional<std::vector<BitVector>> pad_with_meets(const std::vector<BitVector>& ordering,
                                                            const Code& code) {
  std::vector<BitVector> out;
  out.reserve(2 * ordering.size());
  for (std::size_t j = 0; j < ordering.size(); ++j) {
    if (j > 0 && inharmonious(ordering[j - 1], ordering[j])) {
      BitVector meet = ordering[j - 1] & ordering[j];
      if (!code.contains(meet)) return std::nullopt;
      out.push_back(std::move(meet));
    }
    out.push_back(ordering[j]);
  }
  return out;
}

}  // namespace detail

/// Matrix whose columns are the canonical CO (CCO) ordering of the code.
inline std::optional<SensorMatrix> reconstruct_sparse(const Code& code, Geometry geometry) {
  auto o = order(code, geometry);
  if (!o) return std::nullopt;
  SensorMatrix m = SensorMatrix::from_columns(code.word_length(), o->columns, geometry);
  if (!regime_check(m, {geometry, Density::sparse}) || m.column_set() != code) {
    detail::self_check_failed("sparse matrix");
  }
  return m;
}

/// Extends a given CO ordering of `code` to an HCO multiordering by the meet
/// insertion rule. Exposed so that any CO ordering can be tried.
inline std::optional<Multiordering> extend_to_hco(const Code& code, const std::vector<BitVector>& ordering) {
  auto padded = detail::pad_with_meets(ordering, code);
  if (!padded) return std::nullopt;
  Multiordering mo{code.word_length(), std::move(*padded), code};
  if (!regime_check(mo.k, mo.columns, kHCO) || Code(mo.k, mo.columns.begin(), mo.columns.end()) != code) {
    detail::self_check_failed("HCO multiordering");
  }
  return mo;
}

inline std::optional<Multiordering> reconstruct_dense_linear(const Code& code) {
  auto o = co_order(code);
  if (!o) return std::nullopt;
  return extend_to_hco(code, o->columns);
}

/// Dense reconstruction in either geometry. The circle has no known
/// algorithm and reports Unsupported.
inline Outcome<Multiordering> reconstruct_dense(const Code& code, Geometry geometry) {
  if (geometry == Geometry::circle) {
    return Outcome<Multiordering>::unsupported(
        "sensor-dense reconstruction on the circle is an open problem; inserting meets can break CCO");
  }
  if (!co_order(code)) return Outcome<Multiordering>::infeasible("no CO ordering exists");
  auto mo = reconstruct_dense_linear(code);
  if (!mo) return Outcome<Multiordering>::infeasible("an adjacent inharmonious pair has no meet in the code");
  return Outcome<Multiordering>::feasible(std::move(*mo));
}

/// Sparse matrix with exactly the requested column multiplicities; copies
/// of a word sit next to each other.
inline std::optional<SensorMatrix> reconstruct_multiset_sparse(const CodeMultiset& ms, Geometry geometry) {
  auto o = order(ms.support(), geometry);
  if (!o) return std::nullopt;
  std::vector<BitVector> cols;
  cols.reserve(ms.total());
  for (const auto& c : o->columns) cols.insert(cols.end(), ms.count(c), c);
  SensorMatrix m = SensorMatrix::from_columns(ms.word_length(), cols, geometry);
  if (!regime_check(m, {geometry, Density::sparse}) || m.column_multiset() != ms) {
    detail::self_check_failed("sparse multiset matrix");
  }
  return m;
}

/// HCO multiordering with exactly the requested multiplicities. Surplus
/// copies are removed while their new neighbours stay harmonious; whatever
/// survives that fixpoint is the least multiplicity any HCO matrix needs.
inline std::optional<Multiordering> reconstruct_multiset_dense_linear(const CodeMultiset& ms) {
  const Code support = ms.support();
  auto base = reconstruct_dense_linear(support);
  if (!base) return std::nullopt;
  std::vector<BitVector> cols = std::move(base->columns);
  CodeMultiset have = detail::multiset_of(ms.word_length(), cols);
  std::map<BitVector, std::size_t> count(have.entries().begin(), have.entries().end());

  bool removed = true;
  while (removed) {
    removed = false;
    for (std::size_t i = 0; i < cols.size();) {
      const auto& v = cols[i];
      const bool surplus = count[v] > ms.count(v);
      const bool harmonious_gap =
          i == 0 || i + 1 == cols.size() || !inharmonious(cols[i - 1], cols[i + 1]);
      if (surplus && harmonious_gap) {
        --count[v];
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(i));
        removed = true;
      } else {
        ++i;
      }
    }
  }
  for (const auto& [w, c] : count) {
    if (c > ms.count(w)) return std::nullopt;
  }

  std::vector<BitVector> out;
  out.reserve(ms.total());
  for (const auto& c : cols) {
    out.push_back(c);
    std::size_t& n = count[c];
    for (; n < ms.count(c); ++n) out.push_back(c);
  }
  Multiordering mo{ms.word_length(), std::move(out), support};
  if (!regime_check(mo.k, mo.columns, kHCO) || detail::multiset_of(mo.k, mo.columns) != ms) {
    detail::self_check_failed("HCO multiset multiordering");
  }
  return mo;
}

// ---------------------------------------------------------------------------
// Incompatibility graph certificates

/// Vertex of the incompatibility graph: "first lies left of second".
struct ColumnPair {
  BitVector first;
  BitVector second;

  friend bool operator==(const ColumnPair&, const ColumnPair&) = default;
};

enum class EdgeKind {
  reversal,    // {(a,b),(b,a)}
  betweenness  // {(a,b),(b,c)} with a row where a and c are 1 and b is 0
};

struct CertificateEdge {
  EdgeKind kind = EdgeKind::reversal;
  std::size_t witness_row = 0;  // 1-based; 0 for reversal edges
};

/// Odd closed walk in the incompatibility graph. edges[i] joins cycle[i] and
/// cycle[(i + 1) % size].
struct RejectionCertificate {
  std::vector<ColumnPair> cycle;
  std::vector<CertificateEdge> edges;
};

/// Proper two-colouring of the incompatibility graph.
struct Bipartition {
  std::vector<ColumnPair> vertices;
  std::vector<int> colour;
};

/// 1-based row where a and c are 1 and b is 0, if any.
inline std::optional<std::size_t> betweenness_witness(const BitVector& a, const BitVector& b,
                                                      const BitVector& c) {
  const BitVector w = a & c & ~b;
  const std::size_t i = w.next_set(0);
  if (i == w.size()) return std::nullopt;
  return i + 1;
}

/// The edge joining two incompatibility-graph vertices, if there is one.
inline std::optional<CertificateEdge> incompatibility_edge(const ColumnPair& u, const ColumnPair& v) {
  if (u.first == v.second && u.second == v.first) return CertificateEdge{EdgeKind::reversal, 0};
  auto chained = [](const ColumnPair& p, const ColumnPair& q) -> std::optional<CertificateEdge> {
    // p = (a,b), q = (b,c)
    if (p.second != q.first || p.first == q.second) return std::nullopt;
    auto row = betweenness_witness(p.first, p.second, q.second);
    if (!row) return std::nullopt;
    return CertificateEdge{EdgeKind::betweenness, *row};
  };
  if (auto e = chained(u, v)) return e;
  return chained(v, u);
}

/// Checks a certificate against the code alone.
inline bool verify_certificate(const Code& code, const RejectionCertificate& cert) {
  const std::size_t len = cert.cycle.size();
  if (len < 3 || len % 2 == 0 || cert.edges.size() != len) return false;
  for (const auto& p : cert.cycle) {
    if (!code.contains(p.first) || !code.contains(p.second) || p.first == p.second) return false;
  }
  for (std::size_t i = 0; i < len; ++i) {
    const auto& u = cert.cycle[i];
    const auto& v = cert.cycle[(i + 1) % len];
    const auto& e = cert.edges[i];
    if (e.kind == EdgeKind::reversal) {
      if (!(u.first == v.second && u.second == v.first)) return false;
      continue;
    }
    // Either orientation (a,b),(b,c) with the witness row 1 on a,c and 0 on b.
    const std::size_t r = e.witness_row;
    if (r == 0 || r > code.word_length()) return false;
    auto holds = [r](const ColumnPair& p, const ColumnPair& q) {
      return p.second == q.first && p.first != q.second && p.first.test(r - 1) && q.second.test(r - 1) &&
             !p.second.test(r - 1);
    };
    if (!holds(u, v) && !holds(v, u)) return false;
  }
  return true;
}

/// Attaches witnesses to a bare cycle of pairs; nullopt if some step is not
/// an edge.
inline std::optional<RejectionCertificate> certify_cycle(const Code& code, std::vector<ColumnPair> cycle) {
  RejectionCertificate cert;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    auto e = incompatibility_edge(cycle[i], cycle[(i + 1) % cycle.size()]);
    if (!e) return std::nullopt;
    cert.edges.push_back(*e);
  }
  cert.cycle = std::move(cycle);
  if (!verify_certificate(code, cert)) return std::nullopt;
  return cert;
}

/// Two-colours the incompatibility graph of the code by BFS, or returns an
/// odd cycle. Bipartite exactly when a CO ordering exists.
inline std::variant<Bipartition, RejectionCertificate> rejection_certificate(const Code& code) {
  const auto words = code.words();
  const std::size_t n = words.size();
  auto id = [n](std::size_t a, std::size_t b) { return a * n + b; };
  auto pair_of = [&](std::size_t v) { return ColumnPair{words[v / n], words[v % n]}; };

  // Some row is 1 on a and c and 0 on b.
  auto is_between = [&](std::size_t a, std::size_t b, std::size_t c) {
    return !(words[a] & words[c]).is_subset_of(words[b]);
  };

  auto neighbours = [&](std::size_t v, auto&& visit) {
    const std::size_t a = v / n;
    const std::size_t b = v % n;
    visit(id(b, a));
    for (std::size_t c = 0; c < n; ++c) {
      if (c == a || c == b) continue;
      if (is_between(a, b, c)) visit(id(b, c));  // (a,b)-(b,c)
      if (is_between(c, a, b)) visit(id(c, a));  // (c,a)-(a,b)
    }
  };

  constexpr int kUnseen = -1;
  std::vector<int> colour(n * n, kUnseen);
  std::vector<std::size_t> parent(n * n, 0);
  std::vector<std::size_t> depth(n * n, 0);

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || colour[id(a, b)] != kUnseen) continue;
      std::queue<std::size_t> q;
      colour[id(a, b)] = 0;
      parent[id(a, b)] = id(a, b);
      q.push(id(a, b));
      while (!q.empty()) {
        const std::size_t u = q.front();
        q.pop();
        std::optional<std::size_t> clash;
        neighbours(u, [&](std::size_t w) {
          if (clash) return;
          if (colour[w] == kUnseen) {
            colour[w] = 1 - colour[u];
            parent[w] = u;
            depth[w] = depth[u] + 1;
            q.push(w);
          } else if (colour[w] == colour[u]) {
            clash = w;
          }
        });
        if (!clash) continue;
        // Odd cycle: tree path u -> lca, then lca -> w, closed by edge w-u.
        std::size_t x = u;
        std::size_t y = *clash;
        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        while (depth[x] > depth[y]) { left.push_back(x); x = parent[x]; }
        while (depth[y] > depth[x]) { right.push_back(y); y = parent[y]; }
        while (x != y) {
          left.push_back(x);
          right.push_back(y);
          x = parent[x];
          y = parent[y];
        }
        left.push_back(x);
        std::vector<ColumnPair> cycle;
        for (std::size_t v : left) cycle.push_back(pair_of(v));
        for (auto it = right.rbegin(); it != right.rend(); ++it) cycle.push_back(pair_of(*it));
        auto cert = certify_cycle(code, std::move(cycle));
        if (!cert) detail::self_check_failed("odd cycle does not verify");
        return *cert;
      }
    }
  }

  Bipartition bp;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      bp.vertices.push_back(pair_of(id(a, b)));
      bp.colour.push_back(colour[id(a, b)]);
    }
  }
  return bp;
}

/// Checks that a colouring is proper on every incompatibility edge.
inline bool verify_bipartition(const Code& code, const Bipartition& bp) {
  const std::size_t n = code.size();
  if (bp.vertices.size() != n * (n == 0 ? 0 : n - 1) || bp.colour.size() != bp.vertices.size()) return false;
  for (std::size_t i = 0; i < bp.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < bp.vertices.size(); ++j) {
      if (bp.colour[i] == bp.colour[j] && incompatibility_edge(bp.vertices[i], bp.vertices[j])) return false;
    }
  }
  return true;
}

}  // namespace convex1d

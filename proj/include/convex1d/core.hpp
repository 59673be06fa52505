#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "convex1d/bitvector.hpp"
#include "convex1d/errors.hpp"

namespace convex1d {

enum class Geometry { line, circle };
enum class Density { sparse, dense };

/// One of the four realizability regimes: CO, HCO, CCO or HCCO.
struct Regime {
  Geometry geometry = Geometry::line;
  Density density = Density::sparse;

  friend bool operator==(const Regime&, const Regime&) = default;
};

inline constexpr Regime kCO{Geometry::line, Density::sparse};
inline constexpr Regime kHCO{Geometry::line, Density::dense};
inline constexpr Regime kCCO{Geometry::circle, Density::sparse};
inline constexpr Regime kHCCO{Geometry::circle, Density::dense};

inline std::string_view to_string(Geometry g) { return g == Geometry::line ? "line" : "circle"; }
inline std::string_view to_string(Density d) { return d == Density::sparse ? "sparse" : "dense"; }

inline std::string_view regime_name(Regime r) {
  if (r.geometry == Geometry::line) return r.density == Density::sparse ? "CO" : "HCO";
  return r.density == Density::sparse ? "CCO" : "HCCO";
}

/// A set of codewords of a common length k, iterated in column-label order.
class Code {
 public:
  using const_iterator = std::set<BitVector>::const_iterator;

  explicit Code(std::size_t word_length = 0) : k_(word_length) {}

  template <class It>
  Code(std::size_t word_length, It first, It last) : k_(word_length) {
    for (; first != last; ++first) insert(*first);
  }

  Code(std::size_t word_length, std::initializer_list<BitVector> words)
      : Code(word_length, words.begin(), words.end()) {}

  /// Word length taken from the first entry; an empty list gives k = 0.
  static Code of(std::initializer_list<std::string_view> words) {
    Code c(words.size() == 0 ? 0 : words.begin()->size());
    for (auto w : words) c.insert(BitVector::from_string(w));
    return c;
  }

  /// Returns false if the word was already present.
  bool insert(const BitVector& w) {
    if (w.size() != k_) {
      throw LengthMismatch("codeword of length " + std::to_string(w.size()) +
                           " in a code of length " + std::to_string(k_));
    }
    return words_.insert(w).second;
  }

  bool contains(const BitVector& w) const { return words_.contains(w); }
  std::size_t word_length() const noexcept { return k_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  const_iterator begin() const { return words_.begin(); }
  const_iterator end() const { return words_.end(); }
  std::vector<BitVector> words() const { return {words_.begin(), words_.end()}; }

  friend bool operator==(const Code&, const Code&) = default;

 private:
  std::size_t k_;
  std::set<BitVector> words_;
};

/// Codewords with positive multiplicities.
class CodeMultiset {
 public:
  explicit CodeMultiset(std::size_t word_length = 0) : k_(word_length) {}

  void add(const BitVector& w, std::size_t count = 1) {
    if (w.size() != k_) {
      throw LengthMismatch("codeword of length " + std::to_string(w.size()) +
                           " in a multiset of length " + std::to_string(k_));
    }
    if (count == 0) throw PreconditionError("multiplicities must be positive");
    entries_[w] += count;
  }

  std::size_t count(const BitVector& w) const {
    auto it = entries_.find(w);
    return it == entries_.end() ? 0 : it->second;
  }

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& [w, c] : entries_) t += c;
    return t;
  }

  Code support() const {
    Code c(k_);
    for (const auto& [w, n] : entries_) c.insert(w);
    return c;
  }

  std::size_t word_length() const noexcept { return k_; }
  const std::map<BitVector, std::size_t>& entries() const noexcept { return entries_; }

  friend bool operator==(const CodeMultiset&, const CodeMultiset&) = default;

 private:
  std::size_t k_;
  std::map<BitVector, std::size_t> entries_;
};

/// k x n binary matrix: rows are intervals (neurons), columns are the
/// codewords read at the sensors in spatial order.
class SensorMatrix {
 public:
  SensorMatrix() = default;

  SensorMatrix(std::vector<BitVector> rows, Geometry geometry = Geometry::line)
      : rows_(std::move(rows)), geometry_(geometry) {
    n_ = rows_.empty() ? 0 : rows_.front().size();
    for (const auto& r : rows_) {
      if (r.size() != n_) throw LengthMismatch("sensor matrix rows must share one length");
    }
  }

  static SensorMatrix from_strings(std::initializer_list<std::string_view> rows,
                                   Geometry geometry = Geometry::line) {
    std::vector<BitVector> rs;
    for (auto r : rows) rs.push_back(BitVector::from_string(r));
    return SensorMatrix(std::move(rs), geometry);
  }

  /// Builds the matrix whose j-th column is columns[j]; every column has length k.
  static SensorMatrix from_columns(std::size_t k, const std::vector<BitVector>& columns,
                                   Geometry geometry = Geometry::line) {
    SensorMatrix m;
    m.geometry_ = geometry;
    m.n_ = columns.size();
    m.rows_.assign(k, BitVector(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const auto& c = columns[j];
      if (c.size() != k) throw LengthMismatch("column length differs from row count");
      for (std::size_t i = c.next_set(0); i < k; i = c.next_set(i + 1)) m.rows_[i].set(j);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return n_; }
  Geometry geometry() const noexcept { return geometry_; }
  const BitVector& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<BitVector>& row_vectors() const noexcept { return rows_; }

  BitVector column(std::size_t j) const {
    BitVector c(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i].test(j)) c.set(i);
    }
    return c;
  }

  std::vector<BitVector> columns() const {
    std::vector<BitVector> out(n_, BitVector(rows_.size()));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& r = rows_[i];
      for (std::size_t j = r.next_set(0); j < n_; j = r.next_set(j + 1)) out[j].set(i);
    }
    return out;
  }

  Code column_set() const {
    auto cs = columns();
    return Code(rows_.size(), cs.begin(), cs.end());
  }

  CodeMultiset column_multiset() const {
    CodeMultiset ms(rows_.size());
    for (const auto& c : columns()) ms.add(c);
    return ms;
  }

  std::vector<std::string> row_strings() const {
    std::vector<std::string> out;
    for (const auto& r : rows_) out.push_back(r.to_string());
    return out;
  }

  friend bool operator==(const SensorMatrix& a, const SensorMatrix& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<BitVector> rows_;
  std::size_t n_ = 0;
  Geometry geometry_ = Geometry::line;
};

/// True iff the 1s of `row` form one block (cyclically on the circle).
/// The all-zero and all-one rows qualify in both geometries.
inline bool is_discrete_interval(const BitVector& row, Geometry geometry) {
  const std::size_t n = row.size();
  const std::size_t ones = row.count();
  if (ones == 0 || ones == n) return true;
  if (geometry == Geometry::line) {
    const std::size_t first = row.next_set(0);
    std::size_t last = first;
    for (std::size_t i = first; i < n; i = row.next_set(i + 1)) last = i;
    return last - first + 1 == ones;
  }
  // circle: exactly one 0 -> 1 transition
  std::size_t rises = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!row.test(i) && row.test((i + 1) % n)) ++rises;
  }
  return rises == 1;
}

/// f = last index of the 1-block, g = index just before the block starts
/// (the last index of the 0-block on the circle). Both 1-based; g may be 0
/// on the line.
struct RowStats {
  std::size_t f = 0;
  std::size_t g = 0;

  friend bool operator==(const RowStats&, const RowStats&) = default;
};

inline RowStats row_stats(const BitVector& row, Geometry geometry) {
  if (!is_discrete_interval(row, geometry)) {
    throw PreconditionError("row_stats needs a discrete interval, got " + row.to_string());
  }
  const std::size_t n = row.size();
  if (row.none()) throw DegenerateRow("row_stats of the all-zero row");
  if (geometry == Geometry::line) {
    const std::size_t first = row.next_set(0);
    std::size_t last = first;
    for (std::size_t i = first; i < n; i = row.next_set(i + 1)) last = i;
    return {last + 1, first};
  }
  if (row.all()) throw DegenerateRow("row_stats of the all-one row on the circle");
  RowStats s;
  for (std::size_t i = 0; i < n; ++i) {
    const bool here = row.test(i);
    const bool next = row.test((i + 1) % n);
    if (here && !next) s.f = i + 1;
    if (!here && next) s.g = i + 1;
  }
  return s;
}

/// x and y are incomparable under positionwise <=.
inline bool inharmonious(const BitVector& x, const BitVector& y) {
  if (x.size() != y.size()) throw LengthMismatch("inharmonious() on words of different length");
  return x.has_bit_outside(y) && y.has_bit_outside(x);
}

/// First adjacent inharmonious column pair as 1-based indices (j, j+1); on
/// the circle the pair (n, 1) is also adjacent.
inline std::optional<std::pair<std::size_t, std::size_t>> first_inharmonious_pair(
    const std::vector<BitVector>& columns, Geometry geometry) {
  const std::size_t n = columns.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (inharmonious(columns[j], columns[j + 1])) return std::pair{j + 1, j + 2};
  }
  if (geometry == Geometry::circle && n > 2 && inharmonious(columns[n - 1], columns[0])) {
    return std::pair{n, std::size_t{1}};
  }
  return std::nullopt;
}

inline std::optional<std::pair<std::size_t, std::size_t>> first_inharmonious_pair(
    const SensorMatrix& m, Geometry geometry) {
  return first_inharmonious_pair(m.columns(), geometry);
}

inline bool regime_check(const SensorMatrix& m, Regime regime) {
  for (const auto& r : m.row_vectors()) {
    if (!is_discrete_interval(r, regime.geometry)) return false;
  }
  if (regime.density == Density::dense) {
    return !first_inharmonious_pair(m, regime.geometry).has_value();
  }
  return true;
}

/// Column sequence convenience overload.
inline bool regime_check(std::size_t k, const std::vector<BitVector>& columns, Regime regime) {
  return regime_check(SensorMatrix::from_columns(k, columns, regime.geometry), regime);
}

}  // namespace convex1d

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "convex1d/core.hpp"
#include "convex1d/pq_tree.hpp"

namespace convex1d {

/// A CO (or CCO) column order of a code together with the tree describing
/// every admissible order. In `tree`, P{...} groups permute freely and Q[...]
/// sequences may only be reversed; leaf i is the i-th word of the code in
/// label order.
struct Ordering {
  std::vector<BitVector> columns;
  std::string tree;
};

namespace detail {

/// Leaf sets of the PQ-tree constraints: for each neuron, the columns it fires in.
inline std::vector<std::vector<std::size_t>> neuron_supports(const std::vector<BitVector>& columns,
                                                             std::size_t k) {
  std::vector<std::vector<std::size_t>> sets(k);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const auto& c = columns[j];
    for (std::size_t i = c.next_set(0); i < k; i = c.next_set(i + 1)) sets[i].push_back(j);
  }
  return sets;
}

inline std::optional<Ordering> co_order_columns(const std::vector<BitVector>& columns, std::size_t k) {
  PQTree tree(columns.size());
  for (const auto& s : neuron_supports(columns, k)) {
    if (!tree.reduce(s)) return std::nullopt;
  }
  tree.canonicalize();
  Ordering out;
  out.tree = tree.summary();
  for (std::size_t leaf : tree.frontier()) out.columns.push_back(columns[leaf]);
  return out;
}

inline void verify_or_throw(std::size_t k, const Ordering& o, Regime regime) {
  if (!regime_check(k, o.columns, regime)) {
    throw std::logic_error(std::string("ordering failed its own ") + std::string(regime_name(regime)) +
                           " check");
  }
}

/// Lexicographically largest word in string form (neuron 1 most significant).
inline const BitVector& lex_largest(const std::vector<BitVector>& words) {
  const BitVector* best = &words.front();
  for (const auto& w : words) {
    const BitVector diff = w ^ *best;
    const std::size_t i = diff.next_set(0);
    if (i < w.size() && w.test(i)) best = &w;
  }
  return *best;
}

}  // namespace detail

/// Canonical CO ordering of the code, or nullopt if no column order makes
/// every row a discrete interval.
inline std::optional<Ordering> co_order(const Code& code) {
  const auto columns = code.words();
  auto result = detail::co_order_columns(columns, code.word_length());
  if (result) detail::verify_or_throw(code.word_length(), *result, kCO);
  return result;
}

/// Canonical CCO ordering. Rows where the anchor column has a 1 are
/// complemented, which turns the anchor into the zero word; a CO order of
/// the complemented columns is a CCO order of the originals.
inline std::optional<Ordering> cco_order(const Code& code) {
  if (code.empty()) return Ordering{};
  const std::size_t k = code.word_length();
  const auto columns = code.words();
  const BitVector anchor = detail::lex_largest(columns);
  std::vector<BitVector> flipped;
  flipped.reserve(columns.size());
  for (const auto& c : columns) flipped.push_back(c ^ anchor);
  // Column labels keep referring to the original words.
  auto result = detail::co_order_columns(flipped, k);
  if (!result) return std::nullopt;
  for (auto& c : result->columns) c = c ^ anchor;
  detail::verify_or_throw(k, *result, kCCO);
  return result;
}

inline std::optional<Ordering> order(const Code& code, Geometry geometry) {
  return geometry == Geometry::line ? co_order(code) : cco_order(code);
}

}  // namespace convex1d

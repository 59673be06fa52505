#pragma once

// PQ-tree over leaves 0..n-1 with Booth-Lueker style template reduction.
//
// Every node keeps a parent pointer, so the bubble-up pass marks the union of
// the leaf-to-root paths of a constraint instead of using the blocked-node
// machinery. Reductions only touch the pertinent subtree plus that path.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace convex1d::detail {

class PQTree {
 public:
  explicit PQTree(std::size_t leaves) : leaf_node_(leaves) {
    for (std::size_t i = 0; i < leaves; ++i) leaf_node_[i] = new_node(Type::leaf, static_cast<int>(i));
    if (leaves == 1) {
      root_ = leaf_node_[0];
    } else if (leaves > 1) {
      root_ = new_node(Type::pnode);
      for (int l : leaf_node_) attach(root_, l);
    }
  }

  std::size_t leaf_count() const noexcept { return leaf_node_.size(); }

  /// Restricts the tree to orders where `leaves` is consecutive. Returns
  /// false if no such order remains; the tree is then unusable.
  bool reduce(std::span<const std::size_t> leaves) {
    if (!valid_) return false;
    if (leaves.size() <= 1 || leaves.size() >= leaf_node_.size()) return true;
    ++epoch_;
    const int target = static_cast<int>(leaves.size());

    // Bubble: mark the union of paths from the pertinent leaves upward.
    std::vector<int> queue;
    queue.reserve(leaves.size());
    for (std::size_t id : leaves) {
      const int leaf = leaf_node_[id];
      Node& ln = nodes_[leaf];
      begin_scratch(ln);
      ln.pertinent = 1;
      ln.label = Label::full;
      queue.push_back(leaf);
    }
    for (std::size_t id : leaves) {
      int cur = leaf_node_[id];
      while (nodes_[cur].parent >= 0) {
        Node& p = nodes_[nodes_[cur].parent];
        if (p.epoch == epoch_) {
          ++p.pending;
          break;
        }
        begin_scratch(p);
        p.pending = 1;
        cur = nodes_[cur].parent;
      }
    }

    // Bottom-up: a node is ready once all of its marked children are done.
    std::vector<int> order;
    int pertinent_root = -1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int x = queue[head];
      order.push_back(x);
      if (nodes_[x].pertinent == target) {
        pertinent_root = x;
        break;
      }
      Node& p = nodes_[nodes_[x].parent];
      p.pertinent += nodes_[x].pertinent;
      if (--p.pending == 0) queue.push_back(nodes_[x].parent);
    }

    for (int x : order) {
      const bool is_root = x == pertinent_root;
      int result = x;
      if (nodes_[x].type == Type::pnode) {
        result = is_root ? reduce_p_root(x) : reduce_p(x);
      } else if (nodes_[x].type == Type::qnode) {
        result = is_root ? reduce_q_root(x) : reduce_q(x);
      }
      if (result < 0) {
        valid_ = false;
        return false;
      }
      if (is_root) break;
      const Node& r = nodes_[result];
      Node& parent = nodes_[r.parent];
      (r.label == Label::full ? parent.full_kids : parent.partial_kids).push_back(result);
    }
    return true;
  }

  /// Orders P-node children ascending by their smallest leaf and orients
  /// every Q-node so its first child holds the smaller smallest leaf.
  void canonicalize() {
    if (root_ < 0) return;
    std::vector<int> min_leaf(nodes_.size(), 0);
    for (int x : postorder()) {
      Node& nd = nodes_[x];
      if (nd.type == Type::leaf) {
        min_leaf[x] = nd.leaf;
        continue;
      }
      if (nd.type == Type::pnode) {
        std::sort(nd.children.begin(), nd.children.end(),
                  [&](int a, int b) { return min_leaf[a] < min_leaf[b]; });
      } else if (min_leaf[nd.children.front()] > min_leaf[nd.children.back()]) {
        std::reverse(nd.children.begin(), nd.children.end());
      }
      int m = min_leaf[nd.children.front()];
      for (int c : nd.children) m = std::min(m, min_leaf[c]);
      min_leaf[x] = m;
    }
  }

  std::vector<std::size_t> frontier() const {
    std::vector<std::size_t> out;
    if (root_ < 0) return out;
    std::vector<int> stack{root_};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      const Node& nd = nodes_[x];
      if (nd.type == Type::leaf) {
        out.push_back(static_cast<std::size_t>(nd.leaf));
      } else {
        for (auto it = nd.children.rbegin(); it != nd.children.rend(); ++it) stack.push_back(*it);
      }
    }
    return out;
  }

  /// Bracketed form: P{...} children may be permuted freely, Q[...] children
  /// may only be reversed. Leaves print as their labels.
  std::string summary() const {
    if (root_ < 0) return "";
    std::string s;
    write_summary(root_, s);
    return s;
  }

 private:
  enum class Type : std::uint8_t { leaf, pnode, qnode };
  enum class Label : std::uint8_t { empty, partial, full };

  struct Node {
    Type type = Type::leaf;
    int parent = -1;
    int leaf = -1;
    std::vector<int> children;
    // per-reduction scratch, valid while epoch matches the tree's epoch
    std::uint32_t epoch = 0;
    Label label = Label::empty;
    int pertinent = 0;
    int pending = 0;
    std::vector<int> full_kids;
    std::vector<int> partial_kids;
  };

  int new_node(Type t, int leaf = -1) {
    Node nd;
    nd.type = t;
    nd.leaf = leaf;
    nodes_.push_back(std::move(nd));
    return static_cast<int>(nodes_.size()) - 1;
  }

  void begin_scratch(Node& nd) {
    nd.epoch = epoch_;
    nd.label = Label::empty;
    nd.pertinent = 0;
    nd.pending = 0;
    nd.full_kids.clear();
    nd.partial_kids.clear();
  }

  Label label_of(int x) const {
    const Node& nd = nodes_[x];
    return nd.epoch == epoch_ ? nd.label : Label::empty;
  }

  void set_label(int x, Label l) {
    Node& nd = nodes_[x];
    if (nd.epoch != epoch_) begin_scratch(nd);
    nd.label = l;
  }

  void attach(int parent, int child) {
    nodes_[parent].children.push_back(child);
    nodes_[child].parent = parent;
  }

  /// Puts `repl` into the slot `old` occupies (in its parent, or as root).
  void replace_in_parent(int old, int repl) {
    const int p = nodes_[old].parent;
    nodes_[repl].parent = p;
    if (p < 0) {
      root_ = repl;
      return;
    }
    auto& ch = nodes_[p].children;
    *std::find(ch.begin(), ch.end(), old) = repl;
  }

  /// One node standing for `members`: the node itself, or a new P-node.
  int group(const std::vector<int>& members, Label label) {
    if (members.size() == 1) return members.front();
    const int g = new_node(Type::pnode);
    for (int m : members) attach(g, m);
    set_label(g, label);
    return g;
  }

  /// Removes every non-empty child of a P-node, returning the empty ones.
  std::vector<int> take_empty_children(int x) {
    std::vector<int> empties;
    for (int c : nodes_[x].children) {
      if (label_of(c) == Label::empty) empties.push_back(c);
    }
    nodes_[x].children.clear();
    return empties;
  }

  /// Shapes the empty remainder of P-node x: x itself when it keeps two or
  /// more children, the lone child otherwise.
  int empty_part(int x, const std::vector<int>& empties) {
    if (empties.size() == 1) return empties.front();
    for (int c : empties) attach(x, c);
    return x;
  }

  // Partial nodes are always Q-nodes ordered empty ... full.

  int reduce_p(int x) {
    Node& nd = nodes_[x];
    if (nd.full_kids.size() == nd.children.size()) {  // P1
      set_label(x, Label::full);
      return x;
    }
    if (nd.partial_kids.size() > 1) return -1;
    const std::vector<int> fulls = nd.full_kids;
    const std::vector<int> partials = nd.partial_kids;
    const int parent = nd.parent;
    auto empties = take_empty_children(x);

    if (partials.empty()) {  // P3
      const int q = new_node(Type::qnode);
      replace_in_parent(x, q);
      const int e = empty_part(x, empties);
      const int f = group(fulls, Label::full);
      attach(q, e);
      attach(q, f);
      set_label(q, Label::partial);
      (void)parent;
      return q;
    }
    // P5
    const int q = partials.front();
    replace_in_parent(x, q);
    auto& qc = nodes_[q].children;
    if (!empties.empty()) {
      const int e = empty_part(x, empties);
      qc.insert(qc.begin(), e);
      nodes_[e].parent = q;
    }
    if (!fulls.empty()) {
      const int f = group(fulls, Label::full);
      nodes_[q].children.push_back(f);
      nodes_[f].parent = q;
    }
    set_label(q, Label::partial);
    return q;
  }

  int reduce_p_root(int x) {
    Node& nd = nodes_[x];
    if (nd.full_kids.size() == nd.children.size()) {
      set_label(x, Label::full);
      return x;
    }
    const std::vector<int> fulls = nd.full_kids;
    const std::vector<int> partials = nd.partial_kids;
    if (partials.size() > 2) return -1;
    auto empties = take_empty_children(x);

    if (partials.empty()) {  // P2
      for (int c : empties) attach(x, c);
      attach(x, group(fulls, Label::full));
      return x;
    }
    const int q = partials[0];
    if (!fulls.empty()) attach(q, group(fulls, Label::full));
    if (partials.size() == 2) {  // P6
      const int q2 = partials[1];
      auto moved = std::move(nodes_[q2].children);
      nodes_[q2].children.clear();
      for (auto it = moved.rbegin(); it != moved.rend(); ++it) attach(q, *it);
    }
    if (empties.empty()) {
      replace_in_parent(x, q);
    } else {
      for (int c : empties) attach(x, c);
      attach(x, q);
    }
    return x;
  }

  /// Splices the children of partial child `c` into Q-node x at position i,
  /// reversed if `flip`.
  void splice_partial(int x, std::size_t i, bool flip) {
    auto& xc = nodes_[x].children;
    const int c = xc[i];
    std::vector<int> inner = std::move(nodes_[c].children);
    nodes_[c].children.clear();
    if (flip) std::reverse(inner.begin(), inner.end());
    for (int g : inner) nodes_[g].parent = x;
    xc.erase(xc.begin() + static_cast<std::ptrdiff_t>(i));
    xc.insert(xc.begin() + static_cast<std::ptrdiff_t>(i), inner.begin(), inner.end());
  }

  /// Range [a, b] of non-empty children, or false if they are not contiguous
  /// or have a partial child strictly inside.
  bool pertinent_span(int x, std::size_t& a, std::size_t& b) const {
    const auto& ch = nodes_[x].children;
    a = ch.size();
    b = 0;
    for (std::size_t i = 0; i < ch.size(); ++i) {
      if (label_of(ch[i]) != Label::empty) {
        a = std::min(a, i);
        b = i;
      }
    }
    for (std::size_t i = a; i <= b; ++i) {
      const Label l = label_of(ch[i]);
      if (l == Label::empty) return false;
      if (l == Label::partial && i != a && i != b) return false;
    }
    return true;
  }

  int reduce_q(int x) {
    auto& ch = nodes_[x].children;
    if (nodes_[x].full_kids.size() == ch.size()) {  // Q1
      set_label(x, Label::full);
      return x;
    }
    std::size_t a = 0;
    std::size_t b = 0;
    if (!pertinent_span(x, a, b)) return -1;
    const std::size_t last = ch.size() - 1;
    auto ok_towards_right_end = [&](std::size_t lo, std::size_t hi) {
      if (hi != last) return false;
      for (std::size_t i = lo + 1; i <= hi; ++i) {
        if (label_of(ch[i]) != Label::full) return false;
      }
      return true;
    };
    if (!ok_towards_right_end(a, b)) {
      std::reverse(ch.begin(), ch.end());
      const std::size_t na = last - b;
      const std::size_t nb = last - a;
      if (!ok_towards_right_end(na, nb)) return -1;
      a = na;
    }
    if (label_of(ch[a]) == Label::partial) splice_partial(x, a, false);  // Q2
    set_label(x, Label::partial);
    return x;
  }

  int reduce_q_root(int x) {
    auto& ch = nodes_[x].children;
    if (nodes_[x].full_kids.size() == ch.size()) {
      set_label(x, Label::full);
      return x;
    }
    std::size_t a = 0;
    std::size_t b = 0;
    if (!pertinent_span(x, a, b)) return -1;  // Q3
    // Splice the right end first so index a stays valid.
    if (b != a && label_of(ch[b]) == Label::partial) splice_partial(x, b, true);
    if (label_of(ch[a]) == Label::partial) splice_partial(x, a, false);
    return x;
  }

  std::vector<int> postorder() const {
    std::vector<int> out;
    std::vector<std::pair<int, bool>> stack{{root_, false}};
    while (!stack.empty()) {
      auto [x, expanded] = stack.back();
      stack.pop_back();
      if (expanded || nodes_[x].type == Type::leaf) {
        out.push_back(x);
        continue;
      }
      stack.emplace_back(x, true);
      for (int c : nodes_[x].children) stack.emplace_back(c, false);
    }
    return out;
  }

  void write_summary(int x, std::string& s) const {
    const Node& nd = nodes_[x];
    if (nd.type == Type::leaf) {
      s += std::to_string(nd.leaf);
      return;
    }
    s += nd.type == Type::pnode ? "P{" : "Q[";
    for (std::size_t i = 0; i < nd.children.size(); ++i) {
      if (i) s += ' ';
      write_summary(nd.children[i], s);
    }
    s += nd.type == Type::pnode ? '}' : ']';
  }

  std::vector<Node> nodes_;
  std::vector<int> leaf_node_;
  int root_ = -1;
  std::uint32_t epoch_ = 0;
  bool valid_ = true;
};

}  // namespace convex1d::detail

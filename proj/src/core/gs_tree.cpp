#include <algorithm>
#include <stdexcept>

#include "prefforge/election.hpp"

namespace prefforge {

namespace {

int build_balanced(std::vector<GSTree::Node>& nodes, std::span<const Candidate> leaves) {
  if (leaves.size() == 1) {
    nodes.push_back({leaves[0], {}});
    return static_cast<int>(nodes.size()) - 1;
  }
  const std::size_t half = (leaves.size() + 1) / 2;
  const int left = build_balanced(nodes, leaves.subspan(0, half));
  const int right = build_balanced(nodes, leaves.subspan(half));
  nodes.push_back({-1, {left, right}});
  return static_cast<int>(nodes.size()) - 1;
}

}  // namespace

GSTree::GSTree(TreeKind kind, std::vector<Node> nodes, int root)
    : kind_(kind), nodes_(std::move(nodes)), root_(root) {
  const int count = static_cast<int>(nodes_.size());
  if (root_ < 0 || root_ >= count) throw std::invalid_argument("GSTree: root out of range");

  std::vector<int> parent_count(nodes_.size(), 0);
  std::vector<Candidate> leaves;
  for (const Node& n : nodes_) {
    if (n.is_leaf()) {
      if (!n.children.empty()) throw std::invalid_argument("GSTree: leaf with children");
      leaves.push_back(n.leaf);
      continue;
    }
    if (n.children.size() < 2) throw std::invalid_argument("GSTree: internal node with fewer than two children");
    for (int c : n.children) {
      if (c < 0 || c >= count) throw std::invalid_argument("GSTree: child index out of range");
      ++parent_count[static_cast<std::size_t>(c)];
    }
  }
  for (int i = 0; i < count; ++i) {
    const int expected = i == root_ ? 0 : 1;
    if (parent_count[static_cast<std::size_t>(i)] != expected) {
      throw std::invalid_argument("GSTree: nodes do not form a single rooted tree");
    }
  }
  std::sort(leaves.begin(), leaves.end());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i] != static_cast<Candidate>(i)) {
      throw std::invalid_argument("GSTree: leaves must be the candidates 0..m-1, each once");
    }
  }
  num_leaves_ = static_cast<int>(leaves.size());

  // Depth of every node; a cycle would leave a node unreached.
  std::vector<int> depth(nodes_.size(), -1);
  std::vector<int> stack{root_};
  depth[static_cast<std::size_t>(root_)] = 0;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    for (int c : node(id).children) {
      if (depth[static_cast<std::size_t>(c)] >= 0) throw std::invalid_argument("GSTree: cycle");
      depth[static_cast<std::size_t>(c)] = depth[static_cast<std::size_t>(id)] + 1;
      stack.push_back(c);
    }
  }
  if (std::find(depth.begin(), depth.end(), -1) != depth.end()) {
    throw std::invalid_argument("GSTree: unreachable nodes");
  }

  if (kind_ == TreeKind::balanced) {
    int lo = count, hi = 0;
    for (int i = 0; i < count; ++i) {
      if (!nodes_[static_cast<std::size_t>(i)].is_leaf()) continue;
      lo = std::min(lo, depth[static_cast<std::size_t>(i)]);
      hi = std::max(hi, depth[static_cast<std::size_t>(i)]);
    }
    if (hi - lo > 1) throw std::invalid_argument("GSTree: balanced tree has leaf depths differing by more than one");
  } else {
    for (const Node& n : nodes_) {
      if (n.is_leaf()) continue;
      const bool has_leaf_child = std::any_of(n.children.begin(), n.children.end(),
                                              [&](int c) { return node(c).is_leaf(); });
      if (!has_leaf_child) throw std::invalid_argument("GSTree: caterpillar node without a leaf child");
    }
  }
}

GSTree GSTree::balanced(std::span<const Candidate> frontier) {
  if (frontier.empty()) throw std::invalid_argument("GSTree::balanced: no candidates");
  std::vector<Node> nodes;
  const int root = build_balanced(nodes, frontier);
  return GSTree(TreeKind::balanced, std::move(nodes), root);
}

GSTree GSTree::caterpillar(std::span<const Candidate> frontier) {
  if (frontier.empty()) throw std::invalid_argument("GSTree::caterpillar: no candidates");
  std::vector<Node> nodes;
  // Built from the bottom: the deepest internal node holds the last two leaves.
  nodes.push_back({frontier.back(), {}});
  int spine = 0;
  for (std::size_t i = frontier.size() - 1; i-- > 0;) {
    nodes.push_back({frontier[i], {}});
    const int leaf = static_cast<int>(nodes.size()) - 1;
    nodes.push_back({-1, {leaf, spine}});
    spine = static_cast<int>(nodes.size()) - 1;
  }
  return GSTree(TreeKind::caterpillar, std::move(nodes), spine);
}

std::vector<int> GSTree::internal_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
    if (!nodes_[static_cast<std::size_t>(i)].is_leaf()) out.push_back(i);
  }
  return out;
}

std::vector<Candidate> GSTree::frontier() const {
  return frontier(std::vector<bool>(nodes_.size(), false));
}

std::vector<Candidate> GSTree::frontier(const std::vector<bool>& flipped) const {
  if (flipped.size() != nodes_.size()) throw std::invalid_argument("GSTree::frontier: flip vector size mismatch");
  std::vector<Candidate> out;
  out.reserve(static_cast<std::size_t>(num_leaves_));
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const Node& n = node(id);
    if (n.is_leaf()) {
      out.push_back(n.leaf);
      continue;
    }
    // Push in reverse reading order so the first child to read is on top.
    if (flipped[static_cast<std::size_t>(id)]) {
      for (int c : n.children) stack.push_back(c);
    } else {
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
    }
  }
  return out;
}

}  // namespace prefforge

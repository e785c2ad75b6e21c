#include "tgds/plane_tree.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <utility>

#include "tgds/error.hpp"

namespace tgds {

PlaneTree PlaneTree::from_child_counts(std::span<const Count> counts) {
  const auto n = counts.size();
  if (n == 0) throw Error(ErrorCode::kNotExcursion, "empty child-count list");
  if (n > static_cast<std::size_t>(INT32_MAX)) throw Error(ErrorCode::kTooLarge, "tree too large");
  Count level = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (counts[i] < 0) throw Error(ErrorCode::kNotExcursion, "negative child count");
    level += counts[i] - 1;
    if (i + 1 < n && level < 0) {
      std::ostringstream os;
      os << "path reaches -1 at index " << i + 1 << " before the end (" << n << ")";
      throw Error(ErrorCode::kNotExcursion, os.str());
    }
  }
  if (level != -1) {
    throw Error(ErrorCode::kNotExcursion, "path ends at " + std::to_string(level) + ", not -1");
  }

  PlaneTree t;
  t.parent_.assign(n, kNoParent);
  std::vector<std::pair<Vertex, Count>> stack;  // (vertex, children still to place)
  if (counts[0] > 0) stack.emplace_back(0, counts[0]);
  for (std::size_t i = 1; i < n; ++i) {
    auto& top = stack.back();
    t.parent_[i] = top.first;
    if (--top.second == 0) stack.pop_back();
    if (counts[i] > 0) stack.emplace_back(static_cast<Vertex>(i), counts[i]);
  }
  t.finish();
  return t;
}

PlaneTree PlaneTree::from_parent_array(std::span<const Vertex> parent,
                                       std::vector<Vertex>* old_to_new) {
  const auto n = static_cast<Vertex>(parent.size());
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty parent array");
  std::vector<std::vector<Vertex>> kids(parent.size());
  Vertex root = kNoParent;
  for (Vertex v = 0; v < n; ++v) {
    const Vertex p = parent[v];
    if (p == kNoParent) {
      if (root != kNoParent) throw Error(ErrorCode::kInvalidArgument, "more than one root");
      root = v;
    } else if (p < 0 || p >= n || p == v) {
      throw Error(ErrorCode::kInvalidArgument, "parent index out of range at " + std::to_string(v));
    } else {
      kids[p].push_back(v);
    }
  }
  if (root == kNoParent) throw Error(ErrorCode::kInvalidArgument, "no root");

  std::vector<Vertex> relabel(parent.size(), kNoParent);
  std::vector<Vertex> stack{root};
  Vertex next = 0;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    relabel[v] = next++;
    for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back(*it);
  }
  if (next != n) throw Error(ErrorCode::kInvalidArgument, "parent array contains a cycle");

  PlaneTree t;
  t.parent_.assign(parent.size(), kNoParent);
  for (Vertex v = 0; v < n; ++v) {
    if (parent[v] != kNoParent) t.parent_[relabel[v]] = relabel[parent[v]];
  }
  t.finish();
  if (old_to_new) *old_to_new = std::move(relabel);
  return t;
}

void PlaneTree::finish() {
  const auto n = parent_.size();
  first_child_.assign(n + 1, 0);
  for (std::size_t v = 1; v < n; ++v) ++first_child_[parent_[v] + 1];
  for (std::size_t v = 0; v < n; ++v) first_child_[v + 1] += first_child_[v];
  child_list_.assign(n > 0 ? n - 1 : 0, 0);
  rank_.assign(n, 0);
  std::vector<Count> fill(first_child_.begin(), first_child_.end() - 1);
  for (std::size_t v = 1; v < n; ++v) {
    const auto p = parent_[v];
    rank_[v] = fill[p] - first_child_[p];
    child_list_[fill[p]++] = static_cast<Vertex>(v);
  }
  depth_.assign(n, 0);
  for (std::size_t v = 1; v < n; ++v) depth_[v] = depth_[parent_[v]] + 1;
  subtree_.assign(n, 1);
  for (std::size_t v = n; v-- > 1;) subtree_[parent_[v]] += subtree_[v];
}

std::vector<Count> PlaneTree::child_counts() const {
  std::vector<Count> k(parent_.size());
  for (Vertex v = 0; v < size(); ++v) k[v] = num_children(v);
  return k;
}

DegreeSequence PlaneTree::degree_sequence() const {
  std::map<Count, Count> counts;
  for (Vertex v = 0; v < size(); ++v) ++counts[num_children(v)];
  return DegreeSequence::validate(counts);
}

Vertex lca(const PlaneTree& tree, Vertex a, Vertex b) {
  while (tree.depth(a) > tree.depth(b)) a = tree.parent(a);
  while (tree.depth(b) > tree.depth(a)) b = tree.parent(b);
  while (a != b) {
    a = tree.parent(a);
    b = tree.parent(b);
  }
  return a;
}

LatticePath to_lukasiewicz(const PlaneTree& tree) {
  LatticePath w(static_cast<std::size_t>(tree.size()) + 1, 0);
  for (Vertex v = 0; v < tree.size(); ++v) w[v + 1] = w[v] + tree.num_children(v) - 1;
  return w;
}

PlaneTree from_lukasiewicz(const LatticePath& path) {
  if (path.size() < 2 || path[0] != 0) {
    throw Error(ErrorCode::kNotExcursion, "path must start at 0 and have at least one step");
  }
  std::vector<Count> k(path.size() - 1);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Count step = path[i + 1] - path[i];
    if (step < -1) {
      throw Error(ErrorCode::kNotExcursion, "increment below -1 at index " + std::to_string(i));
    }
    k[i] = step + 1;
  }
  return PlaneTree::from_child_counts(k);
}

std::vector<Vertex> reverse_lex_order(const PlaneTree& tree) {
  std::vector<Vertex> order;
  order.reserve(static_cast<std::size_t>(tree.size()));
  std::vector<Vertex> stack{tree.root()};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (Vertex c : tree.children(v)) stack.push_back(c);
  }
  return order;
}

LatticePath reverse_lukasiewicz(const PlaneTree& tree) {
  const auto order = reverse_lex_order(tree);
  LatticePath w(order.size() + 1, 0);
  for (std::size_t j = 0; j < order.size(); ++j) w[j + 1] = w[j] + tree.num_children(order[j]) - 1;
  return w;
}

PrimResult prim_path(const PlaneTree& tree, const EdgeWeights& weights) {
  const auto n = static_cast<std::size_t>(tree.size());
  if (weights.w.size() + 1 != n) {
    throw Error(ErrorCode::kInvalidArgument, "expected one weight per edge");
  }
  {
    auto sorted = weights.w;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::kDuplicateWeights, "edge weights are not distinct");
    }
  }
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  PrimResult out;
  out.order.reserve(n);
  out.path.assign(n + 1, 0);
  auto visit = [&](Vertex v) {
    const auto i = out.order.size();
    out.order.push_back(v);
    out.path[i + 1] = out.path[i] + tree.num_children(v) - 1;
    for (Vertex c : tree.children(v)) frontier.emplace(weights[c], c);
  };
  visit(tree.root());
  while (!frontier.empty()) {
    const Vertex v = frontier.top().second;
    frontier.pop();
    visit(v);
  }
  return out;
}

std::vector<Count> height_process(const PlaneTree& tree) {
  std::vector<Count> h(static_cast<std::size_t>(tree.size()) + 1, 0);
  for (Vertex v = 0; v < tree.size(); ++v) h[v] = tree.depth(v);
  return h;
}

std::vector<Count> contour(const PlaneTree& tree) {
  const auto n = static_cast<std::size_t>(tree.size());
  std::vector<Count> c;
  c.reserve(2 * n + 1);
  c.push_back(0);
  // (vertex, index of the next child to enter)
  std::vector<std::pair<Vertex, Count>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < tree.num_children(v)) {
      const Vertex child = tree.children(v)[static_cast<std::size_t>(next++)];
      stack.emplace_back(child, 0);
      c.push_back(tree.depth(child));
    } else {
      stack.pop_back();
      if (!stack.empty()) c.push_back(tree.depth(stack.back().first));
    }
  }
  while (c.size() < 2 * n + 1) c.push_back(0);
  return c;
}

BranchCounts branch_counts(const PlaneTree& tree) {
  const auto n = static_cast<std::size_t>(tree.size());
  BranchCounts b{std::vector<Count>(n, 0), std::vector<Count>(n, 0)};
  for (Vertex v = 1; v < tree.size(); ++v) {
    const Vertex p = tree.parent(v);
    const Count pos = tree.child_rank(v);
    b.left[v] = b.left[p] + pos;
    b.right[v] = b.right[p] + tree.num_children(p) - 1 - pos;
  }
  return b;
}

ModifiedPath modified_lukasiewicz(const PlaneTree& tree, const DegreeSequence& ds, Count hubs) {
  if (!(tree.degree_sequence() == ds)) {
    throw Error(ErrorCode::kDegreeMismatch, "degree sequence does not match the tree");
  }
  if (hubs < 0 || hubs > tree.size()) {
    throw Error(ErrorCode::kInvalidArgument, "hub count must lie in [0, V]");
  }
  ModifiedPath out;
  const LatticePath w = to_lukasiewicz(tree);
  out.g = w;

  std::vector<Vertex> candidates;
  for (Vertex v = 0; v < tree.size(); ++v) {
    if (tree.num_children(v) > 0) candidates.push_back(v);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](Vertex a, Vertex b) {
    return tree.num_children(a) > tree.num_children(b);
  });
  if (static_cast<Count>(candidates.size()) > hubs) candidates.resize(static_cast<std::size_t>(hubs));

  Count rank = 0;
  for (Vertex j : candidates) {
    JumpRecord rec;
    rec.rank = ++rank;
    rec.vertex = j;
    rec.degree = tree.num_children(j);
    rec.t_loc = j + 1;
    rec.return_loc = j + tree.subtree_size(j);
    const Count base = w[j];
    Count running = w[rec.t_loc] - base;
    for (Count u = rec.t_loc; u <= rec.return_loc; ++u) {
      running = std::min(running, w[u] - base);
      rec.reflected.push_back(running);
      if (running > 0) out.g[u] -= running;
    }
    out.jumps.push_back(std::move(rec));
  }
  return out;
}

Count default_hub_count(const DegreeSequence& ds, double b_n) {
  if (!(b_n > 0.0)) throw Error(ErrorCode::kInvalidArgument, "b_n must be positive");
  const double root = std::sqrt(b_n);
  Count count = 0;
  for (const auto& [i, n] : ds.counts()) {
    if (static_cast<double>(i) >= root) count += n;
  }
  return std::min(count, static_cast<Count>(std::floor(root)));
}

}  // namespace tgds

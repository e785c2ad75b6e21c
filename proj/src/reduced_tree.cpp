#include "tgds/reduced_tree.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

#include "tgds/error.hpp"

namespace tgds {

double ReducedTree::total_length() const {
  return std::accumulate(edge_length.begin(), edge_length.end(), 0.0);
}

double ReducedTree::distance(std::size_t i, std::size_t j) const {
  Vertex a = marked_node.at(i);
  Vertex b = marked_node.at(j);
  double d = 0.0;
  while (a != b) {
    if (shape.depth(a) >= shape.depth(b)) {
      d += edge_length[static_cast<std::size_t>(a - 1)];
      a = shape.parent(a);
    } else {
      d += edge_length[static_cast<std::size_t>(b - 1)];
      b = shape.parent(b);
    }
  }
  return d;
}

std::vector<std::uint64_t> ReducedTree::edge_splits() const {
  const auto n = static_cast<std::size_t>(shape.size());
  std::vector<std::uint64_t> below(n, 0);
  for (std::size_t k = 1; k < marked_node.size(); ++k) below[marked_node[k]] |= std::uint64_t{1} << k;
  for (Vertex v = shape.size() - 1; v > 0; --v) below[shape.parent(v)] |= below[v];
  return std::vector<std::uint64_t>(below.begin() + 1, below.end());
}

namespace {

Count count_leaves(const PlaneTree& t) {
  Count leaves = 0;
  for (Vertex v = 1; v < t.size(); ++v) leaves += t.num_children(v) == 0;
  return leaves;
}

}  // namespace

ReducedTree reduce(const PlaneTree& tree, const std::vector<Vertex>& marked) {
  if (marked.empty()) throw Error(ErrorCode::kInvalidArgument, "no marked vertices");
  for (Vertex v : marked) {
    if (v < 0 || v >= tree.size()) {
      throw Error(ErrorCode::kInvalidArgument, "marked vertex out of range: " + std::to_string(v));
    }
  }
  std::vector<Vertex> nodes(marked.begin(), marked.end());
  nodes.push_back(tree.root());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const std::size_t base = nodes.size();
  for (std::size_t i = 1; i < base; ++i) nodes.push_back(lca(tree, nodes[i - 1], nodes[i]));
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::vector<Vertex> parent(nodes.size(), kNoParent);
  std::vector<std::size_t> stack{0};
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    while (!tree.is_ancestor(nodes[stack.back()], nodes[i])) stack.pop_back();
    parent[i] = static_cast<Vertex>(stack.back());
    stack.push_back(i);
  }

  ReducedTree rt;
  std::vector<Vertex> relabel;
  rt.shape = PlaneTree::from_parent_array(parent, &relabel);
  rt.edge_length.assign(nodes.size() - 1, 0.0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const auto len = tree.depth(nodes[i]) - tree.depth(nodes[static_cast<std::size_t>(parent[i])]);
    rt.edge_length[static_cast<std::size_t>(relabel[i] - 1)] = static_cast<double>(len);
  }
  rt.marked_node.push_back(rt.shape.root());
  for (Vertex v : marked) {
    const auto pos = std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin();
    rt.marked_node.push_back(relabel[static_cast<std::size_t>(pos)]);
  }
  rt.flagged = count_leaves(rt.shape) != static_cast<Count>(marked.size());
  return rt;
}

std::vector<double> four_point_splits(const std::vector<std::vector<double>>& dist) {
  const std::size_t n = dist.size();
  if (n > 20) throw Error(ErrorCode::kTooLarge, "four-point enumeration limited to 20 points");
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<double> g(full + 1, 0.0);
  std::vector<std::size_t> in, out;
  for (std::size_t mask = 1; mask < full; ++mask) {
    in.clear();
    out.clear();
    for (std::size_t k = 0; k < n; ++k) ((mask >> k) & 1 ? in : out).push_back(k);
    double best = std::numeric_limits<double>::infinity();
    for (auto x1 : in) {
      for (auto x2 : in) {
        if (x2 < x1) continue;
        for (auto y1 : out) {
          for (auto y2 : out) {
            if (y2 < y1) continue;
            const auto& d1 = dist[x1];
            const auto& d2 = dist[x2];
            const double f = (d1[y1] + d1[y2] + d2[y1] + d2[y2]) / 4.0 - (d1[x2] + dist[y1][y2]) / 2.0;
            best = std::min(best, f);
          }
        }
      }
    }
    g[mask] = std::max(best, 0.0);
  }
  return g;
}

std::vector<double> discrete_splits(const PlaneTree& tree, const std::vector<Vertex>& marked) {
  std::vector<Vertex> pts{tree.root()};
  pts.insert(pts.end(), marked.begin(), marked.end());
  std::vector<std::vector<double>> dist(pts.size(), std::vector<double>(pts.size(), 0.0));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Vertex a = lca(tree, pts[i], pts[j]);
      const auto d = tree.depth(pts[i]) + tree.depth(pts[j]) - 2 * tree.depth(a);
      dist[i][j] = dist[j][i] = static_cast<double>(d);
    }
  }
  return four_point_splits(dist);
}

ReducedTree reduced_tree_from_distances(const std::vector<std::vector<double>>& dist, double tol) {
  const std::size_t n = dist.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty distance matrix");
  const auto g = four_point_splits(dist);

  // Splits normalized to the side without the root.
  std::vector<std::uint64_t> splits;
  for (std::uint64_t mask = 2; mask < (std::uint64_t{1} << n); mask += 2) {
    if (g[mask] > tol) splits.push_back(mask);
  }
  for (std::size_t a = 0; a < splits.size(); ++a) {
    for (std::size_t b = a + 1; b < splits.size(); ++b) {
      const auto both = splits[a] & splits[b];
      if (both != 0 && both != splits[a] && both != splits[b]) {
        throw Error(ErrorCode::kNotLaminar,
                    "positive splits " + std::to_string(splits[a]) + " and " +
                        std::to_string(splits[b]) + " overlap; tolerance too small?");
      }
    }
  }
  // Siblings are disjoint, so ordering by lowest label gives the plane order.
  std::sort(splits.begin(), splits.end(), [](std::uint64_t a, std::uint64_t b) {
    const int la = std::countr_zero(a), lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    return std::popcount(a) > std::popcount(b);
  });
  auto smallest_containing = [&](std::uint64_t set, std::size_t skip) -> Vertex {
    Vertex best = 0;
    int best_size = 65;
    for (std::size_t s = 0; s < splits.size(); ++s) {
      if (s == skip || (splits[s] & set) != set) continue;
      const int size = std::popcount(splits[s]);
      if (size < best_size) {
        best_size = size;
        best = static_cast<Vertex>(s + 1);
      }
    }
    return best;
  };

  std::vector<Vertex> parent(splits.size() + 1, kNoParent);
  for (std::size_t s = 0; s < splits.size(); ++s) parent[s + 1] = smallest_containing(splits[s], s);

  ReducedTree rt;
  std::vector<Vertex> relabel;
  rt.shape = PlaneTree::from_parent_array(parent, &relabel);
  rt.edge_length.assign(splits.size(), 0.0);
  for (std::size_t s = 0; s < splits.size(); ++s) {
    rt.edge_length[static_cast<std::size_t>(relabel[s + 1] - 1)] = g[splits[s]];
  }
  rt.marked_node.push_back(rt.shape.root());
  std::vector<int> labels_at(splits.size() + 1, 0);
  for (std::size_t k = 1; k < n; ++k) {
    const Vertex node = smallest_containing(std::uint64_t{1} << k, splits.size());
    ++labels_at[node];
    rt.marked_node.push_back(relabel[node]);
  }
  const bool crowded = std::any_of(labels_at.begin() + 1, labels_at.end(), [](int c) { return c > 1; });
  rt.flagged = crowded || count_leaves(rt.shape) != static_cast<Count>(n - 1);
  return rt;
}

}  // namespace tgds

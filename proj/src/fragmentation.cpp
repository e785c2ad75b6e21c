#include "tgds/fragmentation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "tgds/error.hpp"

namespace tgds {

RankedMasses ranked(std::vector<double> values) {
  std::erase_if(values, [](double x) { return x == 0.0; });
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double l1_distance(const RankedMasses& a, const RankedMasses& b) {
  const auto n = std::max(a.size(), b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d += std::abs((i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0));
  }
  return d;
}

double sup_distance(const RankedMasses& a, const RankedMasses& b) {
  const auto n = std::max(a.size(), b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d = std::max(d, std::abs((i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0)));
  }
  return d;
}

namespace {

RankedMasses sizes_of(const std::vector<Vertex>& comp) {
  std::vector<double> size(comp.size(), 0.0);
  for (Vertex c : comp) size[c] += 1.0;
  return ranked(std::move(size));
}

void check_weights(const PlaneTree& tree, const EdgeWeights& weights) {
  if (weights.w.size() + 1 != static_cast<std::size_t>(tree.size())) {
    throw Error(ErrorCode::kInvalidArgument, "expected one weight per edge");
  }
}

}  // namespace

RankedMasses forest_components(const PlaneTree& tree, const EdgeWeights& weights, double s) {
  check_weights(tree, weights);
  return sizes_of(component_labels(tree, [&](Vertex v) { return weights[v] <= s; }));
}

MergeLog build_merge_log(const PlaneTree& tree, const EdgeWeights& weights) {
  check_weights(tree, weights);
  const auto n = static_cast<std::size_t>(tree.size());
  std::vector<Vertex> edges(n - 1);
  std::iota(edges.begin(), edges.end(), 1);
  std::sort(edges.begin(), edges.end(), [&](Vertex a, Vertex b) { return weights[a] < weights[b]; });

  std::vector<Vertex> up(n);
  std::iota(up.begin(), up.end(), 0);
  std::vector<Count> size(n, 1);
  auto find = [&](Vertex x) {
    while (up[x] != x) {
      up[x] = up[up[x]];
      x = up[x];
    }
    return x;
  };

  MergeLog log;
  log.size = tree.size();
  log.events.reserve(n - 1);
  for (Vertex e : edges) {
    Vertex a = find(e);
    Vertex b = find(tree.parent(e));
    if (size[a] > size[b]) std::swap(a, b);
    log.events.push_back({weights[e], size[a], size[b], size[a] + size[b]});
    up[a] = b;
    size[b] += size[a];
  }
  return log;
}

RankedMasses MergeLog::snapshot(double s) const {
  std::map<Count, Count, std::greater<>> multiset;
  multiset[1] = size;
  auto take = [&](Count k) {
    if (--multiset[k] == 0) multiset.erase(k);
  };
  for (const auto& ev : events) {
    if (ev.weight > s) break;
    take(ev.smaller);
    take(ev.larger);
    ++multiset[ev.merged];
  }
  RankedMasses out;
  for (const auto& [k, count] : multiset) out.insert(out.end(), static_cast<std::size_t>(count), double(k));
  return out;
}

RankedMasses frag_process_query(const MergeLog& log, double u) { return log.snapshot(1.0 - u); }

RankedMasses integer_frag(const PlaneTree& tree, const std::vector<Vertex>& edge_order, double t) {
  const auto edges = static_cast<std::size_t>(tree.size() - 1);
  if (edge_order.size() != edges) throw Error(ErrorCode::kInvalidArgument, "edge order must list every edge");
  const auto removed = static_cast<std::size_t>(std::min(std::floor(std::max(t, 0.0)), double(edges)));
  std::vector<char> cut(static_cast<std::size_t>(tree.size()), 0);
  for (std::size_t k = 0; k < removed; ++k) cut[edge_order[k]] = 1;
  return sizes_of(component_labels(tree, [&](Vertex v) { return !cut[v]; }));
}

LatticePath prim_exploration(const PlaneTree& tree, const EdgeWeights& weights, double s) {
  return prim_exploration(tree, weights, prim_path(tree, weights).order, s);
}

LatticePath prim_exploration(const PlaneTree& tree, const EdgeWeights& weights,
                             const std::vector<Vertex>& prim_order, double s) {
  check_weights(tree, weights);
  LatticePath w(prim_order.size() + 1, 0);
  for (std::size_t i = 0; i < prim_order.size(); ++i) {
    Count kept = 0;
    for (Vertex c : tree.children(prim_order[i])) kept += weights[c] <= s;
    w[i + 1] = w[i] + kept - 1;
  }
  return w;
}

RankedMasses excursion_lengths(const LatticePath& path) {
  if (path.empty() || path[0] != 0) throw Error(ErrorCode::kInvalidArgument, "path must start at 0");
  std::vector<double> runs;
  Count floor = path[0];
  double run = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] < floor) {
      runs.push_back(run);
      run = 0.0;
      floor = path[i];
    }
    run += 1.0;
  }
  runs.push_back(run);
  return ranked(std::move(runs));
}

}  // namespace tgds

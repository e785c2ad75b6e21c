#pragma once

#include <vector>

#include "tgds/plane_tree.hpp"

namespace tgds {

// Non-increasing, nonzero entries only; zero padding is implicit.
using RankedMasses = std::vector<double>;

// Sorts non-increasingly and drops zeros.
RankedMasses ranked(std::vector<double> values);

double l1_distance(const RankedMasses& a, const RankedMasses& b);
// Largest entrywise gap, zero padded.
double sup_distance(const RankedMasses& a, const RankedMasses& b);

// Component label of every vertex in the forest keeping the edges for which
// keep(child) is true. Labels are the lex-smallest vertex of each component.
template <class Keep>
std::vector<Vertex> component_labels(const PlaneTree& tree, Keep keep) {
  std::vector<Vertex> comp(static_cast<std::size_t>(tree.size()));
  for (Vertex v = 0; v < tree.size(); ++v) comp[v] = (v > 0 && keep(v)) ? comp[tree.parent(v)] : v;
  return comp;
}

// Ranked sizes of the components of the forest keeping edges with w_e <= s.
RankedMasses forest_components(const PlaneTree& tree, const EdgeWeights& weights, double s);

struct MergeEvent {
  double weight = 0.0;
  Count smaller = 0;  // sizes of the two merged components
  Count larger = 0;
  Count merged = 0;
};

struct MergeLog {
  std::vector<MergeEvent> events;  // increasing weight
  Count size = 0;

  // Component sizes of the forest with edges of weight <= s.
  RankedMasses snapshot(double s) const;
};

MergeLog build_merge_log(const PlaneTree& tree, const EdgeWeights& weights);

// F(u): sizes of the forest at threshold 1 - u.
RankedMasses frag_process_query(const MergeLog& log, double u);

// Component sizes after deleting the first floor(t) ^ (size-1) edges of
// edge_order (child endpoints).
RankedMasses integer_frag(const PlaneTree& tree, const std::vector<Vertex>& edge_order, double t);

// W^(s) along the Prim order of the whole tree, counting only children whose
// edge has weight <= s.
LatticePath prim_exploration(const PlaneTree& tree, const EdgeWeights& weights, double s);
LatticePath prim_exploration(const PlaneTree& tree, const EdgeWeights& weights,
                             const std::vector<Vertex>& prim_order, double s);

// Ranked lengths of the index runs 0..L-1 on which the running minimum is constant.
RankedMasses excursion_lengths(const LatticePath& path);

}  // namespace tgds

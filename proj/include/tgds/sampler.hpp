#pragma once

#include <vector>

#include "tgds/degree_sequence.hpp"
#include "tgds/plane_tree.hpp"
#include "tgds/rng.hpp"

namespace tgds {

inline constexpr Count kMaxEnumerationSize = 14;

// Index in 1..n at which a word of increments summing to -1 must be rotated
// (the rotated word starts right after the first minimum of the partial sums).
std::size_t cycle_lemma_shift(const std::vector<Count>& increments);

// Uniform plane tree with the given degree sequence.
PlaneTree sample_tree(const DegreeSequence& ds, Seed seed);

// All plane trees with the given degree sequence, in lexicographic order of
// their child-count words. Throws TooLarge when V > 14.
std::vector<PlaneTree> enumerate_trees(const DegreeSequence& ds);

// (1/V) V! / prod N_i!, exact for V <= 20.
Count count_trees(const DegreeSequence& ds);

EdgeWeights attach_weights(const PlaneTree& tree, Seed seed);
ExpClocks exp_clocks(const PlaneTree& tree, Seed seed);

struct VertexSample {
  std::vector<Vertex> vertices;  // vertices[k] = floor(V * U_(k)), k-th order statistic
  std::vector<double> uniforms;  // sorted U_(1..q)
};

VertexSample uniform_vertices(const PlaneTree& tree, Count q, Seed seed);

}  // namespace tgds

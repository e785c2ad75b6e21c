#pragma once

#include <cstdint>
#include <vector>

#include "tgds/plane_tree.hpp"

namespace tgds {

struct ReducedTree {
  PlaneTree shape = PlaneTree::from_child_counts(std::vector<Count>{0});
  std::vector<double> edge_length;  // keyed by child endpoint (index v-1)
  // marked_node[k] is the shape vertex carrying label k; label 0 is the root.
  std::vector<Vertex> marked_node;
  // Set when the shape does not have exactly q leaves (duplicates, marked
  // internal vertices, a marked root).
  bool flagged = false;

  std::size_t num_labels() const { return marked_node.size() - 1; }
  double total_length() const;
  // Sum of edge lengths on the path between the nodes of labels i and j.
  double distance(std::size_t i, std::size_t j) const;
  // Label set below each edge (bitmask over labels 1..q), keyed by child endpoint.
  std::vector<std::uint64_t> edge_splits() const;
};

// Subtree spanned by the root and the marked vertices, branching points kept.
ReducedTree reduce(const PlaneTree& tree, const std::vector<Vertex>& marked);

// Four-point minimum g(w) for every subset w (bitmask over points 0..n-1) of a
// distance matrix; g = 0 for the empty and full sets.
std::vector<double> four_point_splits(const std::vector<std::vector<double>>& dist);

// Points are the root (index 0, prepended) and marked.
std::vector<double> discrete_splits(const PlaneTree& tree, const std::vector<Vertex>& marked);

// Rebuilds the tree spanned by points 0..n-1 (0 = root) from a tree metric.
// Splits with g > tol become edges. Throws NotLaminar.
ReducedTree reduced_tree_from_distances(const std::vector<std::vector<double>>& dist, double tol);

}  // namespace tgds

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tgds/degree_sequence.hpp"

namespace tgds {

using Vertex = std::int32_t;
inline constexpr Vertex kNoParent = -1;

// Integer path; values[0] = 0. Used for W^lex, W^rev, W^prim, W^(s) and G.
using LatticePath = std::vector<Count>;

// Rooted plane tree with vertices numbered 0..size-1 in lexicographic
// (depth-first, left to right) order; the root is 0. The edge above vertex
// v > 0 is identified with v.
class PlaneTree {
 public:
  // Child counts listed in lex order. Throws NotExcursion if they do not
  // describe a single tree.
  static PlaneTree from_child_counts(std::span<const Count> counts);

  // parent[root] = kNoParent; children are ordered by increasing index.
  // Vertices are renumbered in lex order; old_to_new receives the relabeling.
  static PlaneTree from_parent_array(std::span<const Vertex> parent,
                                     std::vector<Vertex>* old_to_new = nullptr);

  Vertex size() const { return static_cast<Vertex>(parent_.size()); }
  Vertex root() const { return 0; }
  Vertex parent(Vertex v) const { return parent_[v]; }
  Count num_children(Vertex v) const { return first_child_[v + 1] - first_child_[v]; }
  std::span<const Vertex> children(Vertex v) const {
    return {child_list_.data() + first_child_[v], static_cast<std::size_t>(num_children(v))};
  }
  Count depth(Vertex v) const { return depth_[v]; }
  Count subtree_size(Vertex v) const { return subtree_[v]; }
  // Position of v among its siblings (0 = leftmost).
  Count child_rank(Vertex v) const { return rank_[v]; }

  // a is an ancestor of b (or a == b).
  bool is_ancestor(Vertex a, Vertex b) const { return a <= b && b < a + subtree_[a]; }

  std::vector<Count> child_counts() const;
  DegreeSequence degree_sequence() const;

  bool operator==(const PlaneTree& o) const { return parent_ == o.parent_; }

 private:
  PlaneTree() = default;
  void finish();

  std::vector<Vertex> parent_;
  std::vector<Count> first_child_;  // CSR offsets, size+1
  std::vector<Vertex> child_list_;
  std::vector<Count> depth_;
  std::vector<Count> subtree_;
  std::vector<Count> rank_;
};

Vertex lca(const PlaneTree& tree, Vertex a, Vertex b);

LatticePath to_lukasiewicz(const PlaneTree& tree);
// Throws NotExcursion.
PlaneTree from_lukasiewicz(const LatticePath& path);

// Depth-first order visiting children right to left.
std::vector<Vertex> reverse_lex_order(const PlaneTree& tree);
LatticePath reverse_lukasiewicz(const PlaneTree& tree);

// Edge marks keyed by child endpoint: value for the edge above v is at v-1.
struct EdgeWeights {
  std::vector<double> w;
  double operator[](Vertex child) const { return w[static_cast<std::size_t>(child - 1)]; }
};

struct ExpClocks {
  std::vector<double> gamma;
  double operator[](Vertex child) const { return gamma[static_cast<std::size_t>(child - 1)]; }
};

struct PrimResult {
  LatticePath path;
  std::vector<Vertex> order;  // u(0..size-1)
};

// Throws DuplicateWeights.
PrimResult prim_path(const PlaneTree& tree, const EdgeWeights& weights);

// H(i) = depth of the i-th vertex in lex order, with H(size) = 0.
std::vector<Count> height_process(const PlaneTree& tree);

// Values at times 0..2*size; zero on [2*size-2, 2*size].
std::vector<Count> contour(const PlaneTree& tree);

// First contour time at which v is visited.
inline Count first_visit(const PlaneTree& tree, Vertex v) { return 2 * v - tree.depth(v); }
inline Count last_visit(const PlaneTree& tree, Vertex v) {
  return first_visit(tree, v) + 2 * (tree.subtree_size(v) - 1);
}

// Number of vertices branching off the ancestral line strictly to the left
// (L) or right (R) of each vertex.
struct BranchCounts {
  std::vector<Count> left;
  std::vector<Count> right;
  Count lr(Vertex v) const { return left[v] + right[v]; }
};

BranchCounts branch_counts(const PlaneTree& tree);

struct JumpRecord {
  Count rank = 0;        // 1-based hub rank
  Vertex vertex = 0;     // lex index of the hub
  Count degree = 0;      // number of children
  Count t_loc = 0;       // path index right after the jump
  Count return_loc = 0;  // first index where the path returns below its pre-jump level
  // Running minimum of W - W(t_loc - 1) over [t_loc, u], for u in [t_loc, return_loc].
  std::vector<Count> reflected;
};

struct ModifiedPath {
  LatticePath g;
  std::vector<JumpRecord> jumps;
};

// Subtracts the positive part of the reflected processes of the I_n largest
// hubs (ties left to right). Throws DegreeMismatch.
ModifiedPath modified_lukasiewicz(const PlaneTree& tree, const DegreeSequence& ds, Count hubs);

// #{i : d(i) >= sqrt(b_n)} capped at floor(sqrt(b_n)).
Count default_hub_count(const DegreeSequence& ds, double b_n);

}  // namespace tgds

#pragma once

#include <map>
#include <vector>

#include "doctest.h"
#include "tgds/error.hpp"
#include "tgds/plane_tree.hpp"
#include "tgds/rng.hpp"
#include "tgds/sampler.hpp"

namespace th {

using namespace tgds;

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

inline PlaneTree figure_tree() {
  return PlaneTree::from_child_counts(std::vector<Count>{2, 2, 0, 1, 0, 1, 0});
}
inline PlaneTree star3() { return PlaneTree::from_child_counts(std::vector<Count>{3, 0, 0, 0}); }
inline PlaneTree path4() { return PlaneTree::from_child_counts(std::vector<Count>{1, 1, 1, 0}); }

// Random degree sequence with roughly n vertices: a few large degrees on top of
// a binary/unary bulk.
inline DegreeSequence random_degree_sequence(Count n, Rng& rng) {
  std::map<Count, Count> c;
  Count budget = n - 1;  // edges
  const int hubs = static_cast<int>(rng.below(4));
  for (int h = 0; h < hubs && budget > 2; ++h) {
    const auto d = static_cast<Count>(1 + rng.below(static_cast<std::uint64_t>(std::max<Count>(1, budget / 3))));
    c[d] += 1;
    budget -= d;
  }
  while (budget > 0) {
    const Count d = std::min<Count>(budget, static_cast<Count>(1 + rng.below(3)));
    c[d] += 1;
    budget -= d;
  }
  Count internal = 0, edges = 0;
  for (auto [d, k] : c) {
    internal += k;
    edges += d * k;
  }
  c[0] += edges + 1 - internal;
  return DegreeSequence::validate(c);
}

// Mix of shapes: uniform with a random degree sequence, random recursive
// (shallow), and a long spine with random attachments (deep).
inline PlaneTree random_tree(Count n, Rng& rng) {
  if (n <= 1) return PlaneTree::from_child_counts(std::vector<Count>{0});
  switch (rng.below(3)) {
    case 0:
      return sample_tree(random_degree_sequence(n, rng), Seed{rng.next(), 0});
    case 1: {
      std::vector<Vertex> parent(static_cast<std::size_t>(n), kNoParent);
      for (Count v = 1; v < n; ++v) parent[v] = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(v)));
      return PlaneTree::from_parent_array(parent);
    }
    default: {
      std::vector<Vertex> parent(static_cast<std::size_t>(n), kNoParent);
      for (Count v = 1; v < n; ++v) {
        parent[v] = rng.uniform() < 0.8 ? static_cast<Vertex>(v - 1)
                                        : static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(v)));
      }
      return PlaneTree::from_parent_array(parent);
    }
  }
}

// Every plane tree with exactly n vertices, via all valid child-count words.
inline std::vector<PlaneTree> all_trees(Count n) {
  std::vector<PlaneTree> out;
  std::vector<Count> k;
  // open = number of vertices announced but not yet listed
  auto rec = [&](auto&& self, Count open) -> void {
    const auto placed = static_cast<Count>(k.size());
    if (placed == n) {
      if (open == 0) out.push_back(PlaneTree::from_child_counts(k));
      return;
    }
    if (open == 0) return;
    for (Count c = 0; placed + open + c <= n; ++c) {
      k.push_back(c);
      self(self, open - 1 + c);
      k.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

inline std::vector<double> distinct_weights(Count edges, Rng& rng) {
  std::vector<double> w(static_cast<std::size_t>(edges));
  for (auto& x : w) x = rng.uniform();
  return w;
}

}  // namespace th

#pragma once

#include <cstddef>
#include <vector>

#include "tgds/degree_sequence.hpp"
#include "tgds/fragmentation.hpp"
#include "tgds/reduced_tree.hpp"
#include "tgds/rng.hpp"

namespace tgds {

struct GridJump {
  std::size_t index = 0;  // first grid index whose value includes the jump
  double size = 0.0;
  int rank = 0;           // 1-based position in the beta list
  double location = 0.0;  // exact jump time in [0,1)
};

// Values at k/m for k = 0..m. A jump recorded at index k happens inside
// ((k-1)/m, k/m]; the left limit at k is values[k] - size.
struct GridPath {
  std::size_t m = 0;
  std::vector<double> values;
  std::vector<GridJump> jumps;  // sorted by index

  double at(double x) const;  // value at the nearest grid point
  double left_limit(std::size_t k) const;
};

GridPath brownian_bridge(std::size_t m, Seed seed);

// sigma B + sum_{i<=K} beta_i (1{U_i <= t} - t). K = -1 takes every beta.
GridPath ei_bridge(const ThetaParams& theta, long K, std::size_t m, Seed seed);

// Smallest K with sum_{i>K} beta_i < 1/m.
std::size_t truncation_level(const ThetaParams& theta, std::size_t m);

struct VervaatResult {
  GridPath excursion;
  std::size_t rho = 0;
};

// Cyclic rotation at the first grid minimum. If the infimum is a left limit at
// a jump index k, the grid value just before the jump is replaced by that left
// limit so that the rotated path starts at 0. Throws NotABridge.
VervaatResult vervaat(const GridPath& x);

struct ReflectedProcess {
  int rank = 0;
  std::size_t start = 0;  // t_i
  std::size_t end = 0;    // T_i
  std::vector<double> values;  // on [start, end]
};

struct HeightResult {
  GridPath h;
  std::vector<ReflectedProcess> reflected;
};

HeightResult h_exc(const GridPath& xexc);

// Ranked lengths of the runs on which the running infimum of g(s) - t s stays
// constant (strict decrease threshold 1e-12).
RankedMasses frag_from_excursion(const GridPath& g, double t);

// f(x) + f(y) - 2 inf_{[x,y]} f, points snapped to the grid.
double tree_distance(const GridPath& f, double x, double y);
double tree_distance_index(const GridPath& f, std::size_t i, std::size_t j);

// Range minimum over the grid values, O(1) per query.
class RangeMin {
 public:
  explicit RangeMin(const std::vector<double>& values);
  double min(std::size_t lo, std::size_t hi) const;  // inclusive bounds
 private:
  std::vector<std::vector<double>> table_;
};

// Reduced tree of the root (grid point 0) and the given points under r_f.
// Throws NotLaminar, TooLarge (more than 12 points).
ReducedTree continuum_reduced_tree(const GridPath& f, const std::vector<double>& points, double tol);

}  // namespace tgds

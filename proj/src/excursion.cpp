#include "tgds/excursion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "tgds/error.hpp"

namespace tgds {

namespace {

constexpr double kFlat = 1e-12;

std::size_t snap(const GridPath& f, double x) {
  const double k = std::round(std::clamp(x, 0.0, 1.0) * static_cast<double>(f.m));
  return static_cast<std::size_t>(k);
}

// Lowest of the value and the left limit at k.
double low_at(const GridPath& x, std::size_t k) { return std::min(x.values[k], x.left_limit(k)); }

}  // namespace

double GridPath::at(double x) const { return values[snap(*this, x)]; }

double GridPath::left_limit(std::size_t k) const {
  double v = values[k];
  auto it = std::lower_bound(jumps.begin(), jumps.end(), k,
                             [](const GridJump& j, std::size_t key) { return j.index < key; });
  for (; it != jumps.end() && it->index == k; ++it) v -= it->size;
  return v;
}

GridPath brownian_bridge(std::size_t m, Seed seed) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "grid resolution must be at least 1");
  Rng rng(seed);
  GridPath p;
  p.m = m;
  p.values.assign(m + 1, 0.0);
  const double sd = std::sqrt(1.0 / static_cast<double>(m));
  for (std::size_t k = 1; k <= m; ++k) p.values[k] = p.values[k - 1] + sd * rng.normal();
  const double end = p.values[m];
  for (std::size_t k = 1; k <= m; ++k) {
    p.values[k] -= end * static_cast<double>(k) / static_cast<double>(m);
  }
  p.values[m] = 0.0;
  return p;
}

GridPath ei_bridge(const ThetaParams& theta, long K, std::size_t m, Seed seed) {
  const auto count = K < 0 ? theta.betas.size() : static_cast<std::size_t>(K);
  if (count > theta.betas.size()) throw Error(ErrorCode::kInvalidArgument, "K exceeds the number of betas");
  GridPath p = brownian_bridge(m, seed.derive(1));
  for (auto& v : p.values) v *= theta.sigma;
  Rng rng(seed.derive(2));
  const double md = static_cast<double>(m);
  for (std::size_t i = 0; i < count; ++i) {
    const double beta = theta.betas[i];
    const double u = rng.uniform_open_left();
    if (beta <= 0.0) continue;
    auto idx = static_cast<std::size_t>(std::ceil(u * md));
    idx = std::clamp<std::size_t>(idx, 1, m);
    for (std::size_t k = 0; k <= m; ++k) {
      p.values[k] += beta * ((k >= idx ? 1.0 : 0.0) - static_cast<double>(k) / md);
    }
    p.jumps.push_back({idx, beta, static_cast<int>(i + 1), u});
  }
  p.values[m] = 0.0;
  std::stable_sort(p.jumps.begin(), p.jumps.end(),
                   [](const GridJump& a, const GridJump& b) { return a.index < b.index; });
  return p;
}

std::size_t truncation_level(const ThetaParams& theta, std::size_t m) {
  double tail = 0.0;
  for (double b : theta.betas) tail += b;
  std::size_t K = 0;
  while (K < theta.betas.size() && tail >= 1.0 / static_cast<double>(m)) tail -= theta.betas[K++];
  return K;
}

VervaatResult vervaat(const GridPath& x) {
  const std::size_t m = x.m;
  if (m < 1 || x.values.size() != m + 1 || std::abs(x.values[0]) > 1e-9 || std::abs(x.values[m]) > 1e-9) {
    throw Error(ErrorCode::kNotABridge, "path does not start and end at 0");
  }
  std::vector<double> vals = x.values;
  std::size_t rho = 0;
  double best = vals[0];
  for (std::size_t k = 1; k < m; ++k) {
    if (vals[k] < best) {
      best = vals[k];
      rho = k;
    }
  }
  std::size_t jump_at = 0;
  double best_left = std::numeric_limits<double>::infinity();
  for (const auto& j : x.jumps) {
    const double ll = x.left_limit(j.index);
    if (ll < best_left) {
      best_left = ll;
      jump_at = j.index;
    }
  }
  if (best_left < best) {
    rho = jump_at - 1;
    vals[rho] = best_left;
    if (rho == 0) vals[m] = best_left;
  }

  VervaatResult out;
  out.rho = rho;
  GridPath& v = out.excursion;
  v.m = m;
  v.values.assign(m + 1, 0.0);
  const double base = vals[rho];
  for (std::size_t i = 0; i < m; ++i) v.values[i] = vals[(i + rho) % m] - base;
  v.values[0] = 0.0;
  v.values[m] = 0.0;
  const double shift = static_cast<double>(rho) / static_cast<double>(m);
  for (auto j : x.jumps) {
    j.index = (j.index + m - rho) % m;
    if (j.index == 0) j.index = m;
    j.location -= shift;
    j.location -= std::floor(j.location);
    v.jumps.push_back(j);
  }
  std::stable_sort(v.jumps.begin(), v.jumps.end(),
                   [](const GridJump& a, const GridJump& b) { return a.index < b.index; });
  return out;
}

HeightResult h_exc(const GridPath& xexc) {
  HeightResult out;
  out.h = xexc;
  const std::size_t m = xexc.m;
  for (const auto& j : xexc.jumps) {
    ReflectedProcess r;
    r.rank = j.rank;
    r.start = j.index;
    const double base = xexc.values[j.index] - j.size;
    std::size_t T = m;
    for (std::size_t u = j.index + 1; u <= m; ++u) {
      if (low_at(xexc, u) <= base + kFlat) {
        T = u;
        break;
      }
    }
    r.end = T;
    double running = xexc.values[j.index] - base;
    for (std::size_t u = j.index; u <= T; ++u) {
      if (u > j.index) running = std::min(running, low_at(xexc, u) - base);
      const double value = u == T ? 0.0 : std::max(running, 0.0);
      r.values.push_back(value);
      out.h.values[u] -= value;
    }
    out.reflected.push_back(std::move(r));
  }
  out.h.jumps.clear();
  return out;
}

RankedMasses frag_from_excursion(const GridPath& g, double t) {
  const std::size_t m = g.m;
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "empty grid");
  const double md = static_cast<double>(m);
  std::vector<double> runs;
  double inf = g.values[0];
  double run = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double drift = t * static_cast<double>(k) / md;
    const double y = (k == 0 ? g.values[0] : low_at(g, k)) - drift;
    if (y < inf - kFlat) {
      if (run > 0.0) runs.push_back(run);
      run = 0.0;
    }
    inf = std::min(inf, y);
    run += 1.0;
  }
  runs.push_back(run);
  for (auto& r : runs) r /= md;
  return ranked(std::move(runs));
}

double tree_distance_index(const GridPath& f, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  const double low = *std::min_element(f.values.begin() + static_cast<std::ptrdiff_t>(i),
                                       f.values.begin() + static_cast<std::ptrdiff_t>(j) + 1);
  return f.values[i] + f.values[j] - 2.0 * low;
}

double tree_distance(const GridPath& f, double x, double y) {
  return tree_distance_index(f, snap(f, x), snap(f, y));
}

RangeMin::RangeMin(const std::vector<double>& values) {
  table_.push_back(values);
  for (std::size_t w = 1; 2 * w <= values.size(); w *= 2) {
    const auto& prev = table_.back();
    std::vector<double> next(prev.size() - w);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::min(prev[i], prev[i + w]);
    table_.push_back(std::move(next));
  }
}

double RangeMin::min(std::size_t lo, std::size_t hi) const {
  const std::size_t len = hi - lo + 1;
  const auto level = static_cast<std::size_t>(std::bit_width(len) - 1);
  return std::min(table_[level][lo], table_[level][hi + 1 - (std::size_t{1} << level)]);
}

ReducedTree continuum_reduced_tree(const GridPath& f, const std::vector<double>& points, double tol) {
  if (points.size() > 12) throw Error(ErrorCode::kTooLarge, "at most 12 points");
  std::vector<std::size_t> idx{0};
  for (double p : points) idx.push_back(snap(f, p));
  for (std::size_t a = 1; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) throw Error(ErrorCode::kInvalidArgument, "points must be distinct grid locations");
    }
  }
  std::vector<std::vector<double>> dist(idx.size(), std::vector<double>(idx.size(), 0.0));
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      dist[a][b] = dist[b][a] = tree_distance_index(f, idx[a], idx[b]);
    }
  }
  return reduced_tree_from_distances(dist, tol);
}

}  // namespace tgds

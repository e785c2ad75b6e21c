// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance                 run all criteria
//   acceptance --criterion N   run only criterion N
#define DOCTEST_CONFIG_DISABLE
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "helpers.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "tgds/excursion.hpp"
#include "tgds/fragmentation.hpp"
#include "tgds/harness.hpp"
#include "tgds/lamination.hpp"
#include "tgds/reduced_tree.hpp"
#include "tgds/sampler.hpp"
#include "tgds/stats.hpp"

using namespace tgds;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures with a short description of the first few.
struct Tally {
  long checks = 0;
  long failures = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      if (failures < 3) first += (first.empty() ? "" : "; ") + what;
      ++failures;
    }
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream os;
    os << summary << " [" << checks << " checks";
    if (failures) os << ", " << failures << " failed: " << first;
    os << "]";
    return {failures == 0, os.str()};
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// 1. Enumeration count and chi-square uniformity of the sampler.
Outcome criterion1() {
  Tally t;
  const auto ds = DegreeSequence::validate({{0, 3}, {1, 1}, {2, 2}});
  const auto all = enumerate_trees(ds);
  t.expect(all.size() == 10, "enumeration size " + std::to_string(all.size()));
  t.expect(count_trees(ds) == 10, "count formula");
  std::map<std::vector<Count>, std::size_t> index;
  for (std::size_t i = 0; i < all.size(); ++i) index[all[i].child_counts()] = i;
  t.expect(index.size() == 10, "distinct trees");
  std::string ps;
  for (std::uint64_t seed : {1, 2, 3}) {
    std::vector<Count> counts(all.size(), 0);
    for (std::uint64_t k = 0; k < 100000; ++k) {
      const auto it = index.find(sample_tree(ds, Seed{seed, 0}.derive(k)).child_counts());
      if (it == index.end()) {
        t.expect(false, "sample outside the enumeration");
        break;
      }
      ++counts[it->second];
    }
    const auto chi = chi_square_uniform(counts);
    t.expect(chi.p_value > 0.001, "seed " + std::to_string(seed) + " p=" + fmt("%.3g", chi.p_value));
    ps += (ps.empty() ? "" : ",") + fmt("%.3f", chi.p_value);
  }
  return t.outcome("10 trees enumerated; chi-square p over 1e5 draws = {" + ps + "}");
}

// 2. Branch-count identities and round trips on random trees.
Outcome criterion2() {
  Tally t;
  Rng rng(Seed{202, 0});
  Count largest = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<Count>(1 + rng.below(10000));
    const auto tree = th::random_tree(n, rng);
    largest = std::max<Count>(largest, tree.size());
    const auto w = to_lukasiewicz(tree);
    const auto rev = reverse_lukasiewicz(tree);
    const auto order = reverse_lex_order(tree);
    const auto bc = branch_counts(tree);
    bool right = true, left = true;
    for (Vertex v = 0; v < tree.size(); ++v) {
      right = right && bc.right[v] == w[v];
      left = left && bc.left[order[v]] == rev[v];
    }
    t.expect(right, "R != W^lex on trial " + std::to_string(trial));
    t.expect(left, "L != W^rev on trial " + std::to_string(trial));
    const auto back = from_lukasiewicz(w);
    t.expect(back == tree, "decode(encode) on trial " + std::to_string(trial));
    t.expect(to_lukasiewicz(back) == w, "encode(decode) on trial " + std::to_string(trial));
  }
  const std::vector<Count> plotted{0, 1, 2, 1, 2, 3, 2, 1, 0, 1, 2, 1, 0, 0, 0};
  t.expect(contour(th::figure_tree()) == plotted, "reference contour");
  return t.outcome("R = W^lex, L = W^rev and round trips on 1000 trees (largest " + std::to_string(largest) +
                   "); reference tree contour matches");
}

// 3. Prim exploration vs forest components, merge log vs direct filtering.
Outcome criterion3() {
  Tally t;
  Rng rng(Seed{303, 0});
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<Count>(2 + rng.below(499));
    const auto tree = th::random_tree(n, rng);
    const auto wv = attach_weights(tree, Seed{303, static_cast<std::uint64_t>(trial) + 1});
    const double s = rng.uniform();
    const auto direct = oracle::components(tree, [&](Vertex v) { return wv[v] <= s; });
    t.expect(excursion_lengths(prim_exploration(tree, wv, s)) == direct,
             "exploration on trial " + std::to_string(trial));
    t.expect(forest_components(tree, wv, s) == direct, "forest on trial " + std::to_string(trial));
    const auto log = build_merge_log(tree, wv);
    bool all = true;
    for (int q = 0; q < 100; ++q) {
      const double u = rng.uniform();
      all = all && frag_process_query(log, u) ==
                       oracle::components(tree, [&](Vertex v) { return wv[v] <= 1.0 - u; });
    }
    t.expect(all, "merge log on trial " + std::to_string(trial));
  }
  return t.outcome("200 random (tree, weights, s) with V <= 500; 100 merge-log queries each");
}

// Face count where a degenerate chord (cut leaf edge) counts as a zero-mass face.
struct FaceCheck {
  bool count_ok = true;
  bool mass_ok = true;
  bool oracle_ok = true;
  long literal_gap = 0;  // components minus open-disk faces
  double worst_ratio = 0.0;
};

void check_faces(const PlaneTree& tree, const std::vector<Vertex>& order, double time, bool with_oracle,
                 FaceCheck& fc) {
  const auto lam = lamination_at(tree, order, time);
  const auto faces = face_masses(lam);
  std::set<double> points;
  for (const auto& c : lam.chords)
    if (c.degenerate()) points.insert(c.a);
  auto masses = faces;
  masses.insert(masses.end(), points.size(), 0.0);
  std::sort(masses.begin(), masses.end(), std::greater<>());
  const auto comps = integer_frag(tree, order, time);
  fc.count_ok = fc.count_ok && masses.size() == comps.size();
  fc.literal_gap += static_cast<long>(comps.size()) - static_cast<long>(faces.size());
  const double zeta = static_cast<double>(tree.size());
  const double removed = std::min(std::floor(time), zeta - 1);
  const double bound = 2 * (removed + 1) / zeta;
  double worst = 0;
  for (std::size_t j = 0; j < std::max(masses.size(), comps.size()); ++j) {
    const double m = j < masses.size() ? masses[j] : 0.0;
    const double f = j < comps.size() ? comps[j] / zeta : 0.0;
    worst = std::max(worst, std::abs(m - f));
  }
  fc.mass_ok = fc.mass_ok && worst <= bound + 1e-12;
  fc.worst_ratio = std::max(fc.worst_ratio, worst / bound);
  if (with_oracle) {
    const auto of = oracle::face_masses(lam.chords);
    std::vector<char> gone(static_cast<std::size_t>(tree.size()), 0);
    for (std::size_t k = 0; k < static_cast<std::size_t>(removed); ++k) gone[order[k]] = 1;
    const auto oc = oracle::components(tree, [&](Vertex v) { return !gone[v]; });
    bool same = of.size() == faces.size() && oc == comps;
    for (std::size_t j = 0; same && j < of.size(); ++j) same = std::abs(of[j] - faces[j]) <= 1e-12;
    fc.oracle_ok = fc.oracle_ok && same;
  }
}

// 4. Faces of the lamination vs components of the fragmented tree.
Outcome criterion4() {
  Tally t;
  FaceCheck fc;
  Rng rng(Seed{404, 0});
  long trees = 0, instances = 0;
  for (Count n = 2; n <= 8; ++n) {
    for (const auto& tree : th::all_trees(n)) {
      ++trees;
      std::vector<Vertex> order(static_cast<std::size_t>(n - 1));
      std::iota(order.begin(), order.end(), 1);
      // every edge order up to 6 edges, 100 random orders for 7 edges
      const bool every = n <= 7;
      for (int r = 0; every || r < 100; ++r) {
        if (!every) std::shuffle(order.begin(), order.end(), rng.engine());
        for (Count k = 0; k <= n; ++k) {
          check_faces(tree, order, static_cast<double>(k), true, fc);
          ++instances;
        }
        if (every && !std::next_permutation(order.begin(), order.end())) break;
      }
    }
  }
  t.expect(fc.count_ok, "face count (small trees)");
  t.expect(fc.mass_ok, "mass bound (small trees)");
  t.expect(fc.oracle_ok, "brute-force oracle (small trees)");
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = static_cast<Count>(2 + rng.below(10000));
    const auto tree = th::random_tree(n, rng);
    std::vector<Vertex> order(static_cast<std::size_t>(n - 1));
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng.engine());
    for (double time : {0.0, 1.0, 2.0, 3.5, 10.0, 100.0, 0.5 * static_cast<double>(n), static_cast<double>(n)}) {
      check_faces(tree, order, time, n <= 64, fc);
      ++instances;
    }
  }
  t.expect(fc.count_ok, "face count (random trees)");
  t.expect(fc.mass_ok, "mass bound (random trees)");
  t.expect(fc.oracle_ok, "brute-force oracle (random trees)");
  return t.outcome(std::to_string(trees) + " exhaustive trees + 60 random trees, " + std::to_string(instances) +
                   " (tree, order, t) instances; worst deviation/bound = " + fmt("%.3f", fc.worst_ratio) +
                   "; degenerate leaf chords counted as zero-mass faces (open-disk faces fall short by " +
                   std::to_string(fc.literal_gap) + " in total)");
}

GridPath tent(std::size_t m, double height) {
  GridPath g;
  g.m = m;
  for (std::size_t k = 0; k <= m; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(m);
    g.values.push_back(2 * height * std::min(s, 1 - s));
  }
  return g;
}

// 5. H^exc invariants and the tent fragmentation oracle.
Outcome criterion5() {
  Tally t;
  const std::size_t m = 1 << 14;
  const double r7 = std::sqrt(7.0);
  const auto theta = theta_check(1 / r7, {2 / r7, 1 / r7, 1 / r7}, true);
  double lowest = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto x = vervaat(ei_bridge(theta, -1, m, Seed{505, s})).excursion;
    const auto res = h_exc(x);
    bool mono = true, range = true, start = true, outside = true, below = true;
    std::vector<char> covered(m + 1, 0);
    for (std::size_t i = 0; i < res.reflected.size(); ++i) {
      const auto& r = res.reflected[i];
      const double beta = theta.betas[static_cast<std::size_t>(r.rank - 1)];
      start = start && std::abs(r.values.front() - beta) <= 1e-9;
      for (std::size_t k = 0; k + 1 < r.values.size(); ++k) mono = mono && r.values[k + 1] <= r.values[k];
      for (double v : r.values) range = range && v >= 0 && v <= beta + 1e-9;
      for (std::size_t k = r.start; k <= r.end; ++k) covered[k] = 1;
    }
    for (std::size_t k = 0; k <= m; ++k) {
      lowest = std::min(lowest, res.h.values[k]);
      below = below && res.h.values[k] <= x.values[k] + 1e-12;
      if (!covered[k]) outside = outside && res.h.values[k] == x.values[k];
    }
    const std::string id = " on path " + std::to_string(s);
    t.expect(res.reflected.size() == 3, "three reflected processes" + id);
    t.expect(start && mono && range, "reflected process shape" + id);
    t.expect(outside && below, "H vs X" + id);
    t.expect(*std::min_element(res.h.values.begin(), res.h.values.end()) >= -1e-9, "H >= -1e-9" + id);
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto x = vervaat(ei_bridge(theta_check(1.0, {}), -1, m, Seed{506, s})).excursion;
    t.expect(h_exc(x).h.values == x.values, "H = X without jumps");
  }
  double worst = 0;
  for (double h : {0.25, 0.5, 1.0}) {
    const auto g = tent(m, h);
    for (double time : {0.0, 0.05, 0.3, h, 1.9 * h}) {
      const auto got = frag_from_excursion(g, time);
      const auto want = oracle::piecewise_linear_fragments({{0, 0}, {0.5, h}, {1, 0}}, time);
      bool ok = got.size() >= want.size();
      for (std::size_t i = 0; ok && i < got.size(); ++i) {
        const double d = std::abs(got[i] - (i < want.size() ? want[i] : 0.0));
        worst = std::max(worst, d);
        ok = d <= 2.0 / m;
      }
      t.expect(ok, "tent h=" + fmt("%g", h) + " t=" + fmt("%g", time));
    }
  }
  return t.outcome("100 excursions at m = 2^14; min H = " + fmt("%.2e", lowest) +
                   "; tent fragments within " + fmt("%.2e", worst) + " (2/m = " + fmt("%.2e", 2.0 / m) + ")");
}

// Random leaf-labelled tree with integer lengths, root possibly unary, every
// other internal node at least binary.
struct HandTree {
  std::vector<int> parent;
  std::vector<double> length;
  std::vector<int> label_node;  // label k -> node (label 0 = root = node 0)
};

HandTree hand_tree(std::size_t q, Rng& rng) {
  HandTree h;
  h.parent = {-1};
  h.length = {0};
  std::vector<std::vector<int>> groups;
  // split labels 1..q recursively
  std::function<void(int, std::vector<int>)> grow = [&](int node, std::vector<int> labels) {
    if (labels.size() == 1) {
      h.label_node[static_cast<std::size_t>(labels[0])] = node;
      return;
    }
    std::shuffle(labels.begin(), labels.end(), rng.engine());
    const std::size_t parts = 2 + rng.below(std::min<std::size_t>(labels.size(), 3) - 1);
    std::vector<std::vector<int>> split(parts);
    for (std::size_t i = 0; i < labels.size(); ++i) split[i < parts ? i : rng.below(parts)].push_back(labels[i]);
    for (auto& part : split) {
      const int child = static_cast<int>(h.parent.size());
      h.parent.push_back(node);
      h.length.push_back(static_cast<double>(1 + rng.below(5)));
      grow(child, part);
    }
  };
  h.label_node.assign(q + 1, 0);
  std::vector<int> labels(q);
  std::iota(labels.begin(), labels.end(), 1);
  if (q == 1 || rng.uniform() < 0.5) {
    const int child = 1;
    h.parent.push_back(0);
    h.length.push_back(static_cast<double>(1 + rng.below(5)));
    grow(child, labels);
  } else {
    grow(0, labels);
  }
  return h;
}

double hand_distance(const HandTree& h, int a, int b) {
  auto up = [&](int v) {
    std::map<int, double> d;
    double acc = 0;
    for (; v != -1; v = h.parent[static_cast<std::size_t>(v)]) {
      d[v] = acc;
      acc += h.length[static_cast<std::size_t>(v)];
    }
    return d;
  };
  const auto da = up(a), db = up(b);
  double best = 1e300;
  for (const auto& [v, x] : da)
    if (auto it = db.find(v); it != db.end()) best = std::min(best, x + it->second);
  return best;
}

// 6. Reduced trees rebuilt from distance matrices.
Outcome criterion6() {
  Tally t;
  Rng rng(Seed{606, 0});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t q = 1 + rng.below(8);
    const auto h = hand_tree(q, rng);
    std::vector<std::vector<double>> d(q + 1, std::vector<double>(q + 1));
    for (std::size_t i = 0; i <= q; ++i)
      for (std::size_t j = 0; j <= q; ++j) d[i][j] = hand_distance(h, h.label_node[i], h.label_node[j]);
    const auto rt = reduced_tree_from_distances(d, 0.5);
    const std::string id = " on trial " + std::to_string(trial);
    t.expect(!rt.flagged, "flagged" + id);
    t.expect(rt.shape.size() == static_cast<Vertex>(h.parent.size()), "node count" + id);
    bool dist = true;
    for (std::size_t i = 0; i <= q; ++i)
      for (std::size_t j = 0; j <= q; ++j) dist = dist && rt.distance(i, j) == d[i][j];
    t.expect(dist, "distances" + id);
    std::multiset<double> a(rt.edge_length.begin(), rt.edge_length.end());
    std::multiset<double> b(h.length.begin() + 1, h.length.end());
    t.expect(a == b, "edge lengths" + id);
  }
  const double tol = 1e-3;
  double worst = 0;
  const auto g = tent(1 << 12, 1.0);
  const std::vector<std::vector<double>> point_sets{
      {0.1, 0.3}, {0.2, 0.7}, {0.05, 0.45, 0.55, 0.9}, {0.125, 0.25, 0.375, 0.625, 0.75, 0.875}};
  for (const auto& pts : point_sets) {
    const auto rt = continuum_reduced_tree(g, pts, tol);
    for (std::size_t i = 0; i <= pts.size(); ++i)
      for (std::size_t j = 0; j <= pts.size(); ++j) {
        const double xi = i == 0 ? 0.0 : pts[i - 1], xj = j == 0 ? 0.0 : pts[j - 1];
        worst = std::max(worst, std::abs(rt.distance(i, j) - tree_distance(g, xi, xj)));
      }
  }
  t.expect(worst <= 4 * tol, "tent distances off by " + fmt("%.2e", worst));
  return t.outcome("50 hand-built trees (q <= 8) rebuilt exactly; tent reduced trees within " + fmt("%.1e", worst) +
                   " (4 tol = " + fmt("%.0e", 4 * tol) + ")");
}

std::string ks_summary(const ExperimentReport& r, Tally& t, const std::string& name) {
  const auto j = nlohmann::json::parse(r.json);
  std::string s = name + " p={";
  bool first = true;
  for (const auto& run : j.at("runs")) {
    const double p = run.at("p").get<double>();
    s += (first ? "" : ",") + fmt("%.3f", p);
    first = false;
    t.expect(p > 0.01, name + " seed " + std::to_string(run.at("seed").get<std::uint64_t>()) + " p=" + fmt("%.2g", p));
  }
  return s + "}";
}

// 7. Discrete vs continuum KS at n = 1e5.
Outcome criterion7() {
  Tally t;
  ExperimentConfig cfg;
  cfg.n = 100000;
  cfg.samples = 2000;
  cfg.seeds = {1, 2, 3};
  cfg.m = 1 << 14;
  cfg.t = 1.0;
  std::string summary;
  for (const char* kind : {"lukasiewicz", "heights", "fragmentation"}) {
    cfg.kind = kind;
    summary += ks_summary(run_experiment(cfg), t, kind) + " ";
  }
  const double r7 = std::sqrt(7.0);
  cfg.kind = "fragmentation";
  cfg.builder = "hubs+binary";
  cfg.sigma = 1 / r7;
  cfg.betas = {2 / r7, 1 / r7, 1 / r7};
  summary += ks_summary(run_experiment(cfg), t, "fragmentation(three hubs)");
  return t.outcome(summary);
}

// 8. Coupled lamination processes get closer as the tree grows.
Outcome criterion8() {
  Tally t;
  ExperimentConfig cfg;
  cfg.kind = "lamination";
  cfg.samples = 50;
  cfg.seeds = {8};
  cfg.sizes = {100, 1000, 10000};
  cfg.horizon = 1.0;
  cfg.tol = 0.01;
  const auto r = run_experiment(cfg);
  const auto j = nlohmann::json::parse(r.json);
  std::string s = "median process distance by zeta:";
  std::vector<double> med;
  for (const auto& row : j.at("rows")) {
    med.push_back(row.at("median").get<double>());
    s += " " + std::to_string(row.at("zeta").get<Count>()) + "->" + fmt("%.4f", med.back());
  }
  for (std::size_t i = 1; i < med.size(); ++i) t.expect(med[i] < med[i - 1], "median not decreasing");
  return t.outcome(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> all{criterion1, criterion2, criterion3, criterion4,
                                                  criterion5, criterion6, criterion7, criterion8};
  bool ok = true;
  for (int i = 1; i <= 8; ++i) {
    if (only && i != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[static_cast<std::size_t>(i - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i, o.detail.c_str(), secs);
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}

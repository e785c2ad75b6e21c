#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tgds/degree_sequence.hpp"
#include "tgds/plane_tree.hpp"
#include "tgds/rng.hpp"
#include "tgds/stats.hpp"

namespace tgds {

inline constexpr const char* kVersion = "0.1.0";

struct BuiltSequence {
  DegreeSequence ds;
  double b_n = 0.0;  // sqrt(sum (i-1)^2 N_i)
  std::string construction;
};

// kind: "binary", "geometric-tail" or "hubs+binary". Throws Infeasible.
BuiltSequence build_degree_sequence(const std::string& kind, Count n, const ThetaParams& theta);

double variance_scale(const DegreeSequence& ds);

// Sample k uses stream seed.derive(k); every generator is deterministic.
std::vector<double> lukasiewicz_midpoint_samples(const DegreeSequence& ds, double b_n,
                                                 std::size_t count, Seed seed);
std::vector<double> excursion_midpoint_samples(const ThetaParams& theta, std::size_t m,
                                               std::size_t count, Seed seed);
// (sigma^2/2)(b_n/V) times the height of a uniform vertex.
std::vector<double> height_samples(const DegreeSequence& ds, double b_n, double sigma2,
                                   std::size_t count, Seed seed);
// H^exc at an independent uniform time.
std::vector<double> hexc_samples(const ThetaParams& theta, std::size_t m, std::size_t count, Seed seed);
// Largest component of the forest at s = 1 - t a_n / V, divided by V.
std::vector<double> frag_top_samples(const DegreeSequence& ds, double a_n, double t,
                                     std::size_t count, Seed seed);
std::vector<double> continuum_frag_top_samples(const ThetaParams& theta, std::size_t m, double t,
                                               std::size_t count, Seed seed);

// Process distance between the dynamic lamination process (chord k at
// gamma_(k) size/a_n) and the integer one (chord k at k/a_n), coupled through
// the clock order.
double lamination_coupling_distance(const PlaneTree& tree, Seed seed, double a_n, double horizon,
                                    double tol);

struct MassCheck {
  double worst_l1 = 0.0;    // largest l1 gap divided by its bound
  double worst_sup = 0.0;
  std::size_t instances = 0;
  bool ok = true;
};

// Face masses of the lamination after floor(t b_n) chords against the
// integer-time fragmentation at the same time, for `count` sampled trees.
MassCheck masses_check(const DegreeSequence& ds, double b_n, double t, std::size_t count, Seed seed);

struct ExperimentConfig {
  std::string kind = "fragmentation";  // lukasiewicz | heights | fragmentation | masses | lamination
  std::string builder = "binary";
  Count n = 10000;
  std::string ds_path;  // overrides the builder when set
  double sigma = 1.0;
  std::vector<double> betas;
  std::string a_n_rule = "b_n";  // or "sqrt_zeta"
  std::size_t m = 1 << 14;
  std::size_t samples = 200;
  double t = 1.0;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  double alpha = 0.01;
  double horizon = 1.0;
  double tol = 0.01;
  std::vector<Count> sizes{100, 1000, 10000};  // lamination kind
  std::string out_dir;
  std::string cache_dir;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);
std::uint64_t fnv1a(const std::string& bytes);
std::uint64_t config_hash(const ExperimentConfig& cfg);

struct ExperimentReport {
  std::string json;
  bool passed = false;
};

// Writes report.json (and sample CSVs) into cfg.out_dir when set. Throws
// TooFewSamples for zero samples; partial outputs are removed on failure.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace tgds

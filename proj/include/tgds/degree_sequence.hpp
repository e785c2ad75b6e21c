#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tgds {

using Count = std::int64_t;

// Counts N_i of vertices with i children. Invariant: sum N_i = 1 + sum i N_i.
// Stored sparsely since hub sequences have few distinct, very large degrees.
class DegreeSequence {
 public:
  // Throws ConstraintViolation or Empty.
  static DegreeSequence validate(const std::map<Count, Count>& counts);

  const std::map<Count, Count>& counts() const { return counts_; }
  Count count(Count children) const;
  Count num_vertices() const { return vertices_; }
  Count num_edges() const { return vertices_ - 1; }

  bool operator==(const DegreeSequence&) const = default;

 private:
  explicit DegreeSequence(std::map<Count, Count> counts, Count vertices)
      : counts_(std::move(counts)), vertices_(vertices) {}

  std::map<Count, Count> counts_;  // zero entries dropped
  Count vertices_ = 0;
};

struct DegreeStats {
  Count num_vertices = 0;
  Count num_edges = 0;
  Count sigma2 = 0;  // sum i(i-1) N_i
  Count max_degree = 0;
};

DegreeStats stats(const DegreeSequence& ds);

// N_0 zeros, N_1 ones, ... sorted non-increasingly; length V.
std::vector<Count> child_sequence(const DegreeSequence& ds);

DegreeSequence from_child_sequence(std::span<const Count> children);

struct ThetaParams {
  double sigma = 0.0;
  std::vector<double> betas;  // non-increasing
  bool normalized = false;
  bool condition_b = false;
  bool condition_a4 = false;
  bool divergent_beta = false;

  bool operator==(const ThetaParams&) const = default;
};

inline constexpr double kThetaTolerance = 1e-9;

// Sorts betas and sets the flags. In strict mode an unnormalized parameter set
// throws NotNormalized.
ThetaParams theta_check(double sigma, std::vector<double> betas, bool strict = false,
                        bool divergent_beta = false);

enum class Trend { kIncreasing, kDecreasing, kStable, kMixed };

std::string to_string(Trend trend);

struct HypothesisRow {
  Count num_vertices = 0;
  double b_n = 0.0;
  std::vector<double> hub_ratios;  // d(i)/b_n for i = 1..10 (zero-padded)
  double variance_ratio = 0.0;     // sum (i-1)^2 N_i / b_n^2
  double size_ratio = 0.0;         // V_n / b_n
  double sigma2_estimate = 0.0;    // variance_ratio - sum hub_ratios^2
};

// Finite-n tabulation only; the trends describe the rows, they do not decide
// whether a limit exists.
struct HypothesisReport {
  std::vector<HypothesisRow> rows;
  Trend size_trend = Trend::kMixed;                 // (A.1): V_n
  std::vector<Trend> hub_trends;                    // (A.2): d(i)/b_n per i
  Trend variance_trend = Trend::kMixed;             // (A.3)
  Trend sigma2_trend = Trend::kMixed;               // (A.4): sigma^2 estimate
  double last_sigma2_estimate = 0.0;
  double last_beta_sum = 0.0;                       // (B): sum of the last row's hub ratios
};

HypothesisReport hypothesis_report(
    const std::vector<std::pair<DegreeSequence, double>>& family);

// Serialization: {"counts": {"i": N_i}} and two-column CSV "i,N_i".
std::string to_json(const DegreeSequence& ds);
DegreeSequence degree_sequence_from_json(const std::string& text);
std::string to_csv(const DegreeSequence& ds);
DegreeSequence degree_sequence_from_csv(const std::string& text);

}  // namespace tgds

#include "tgds/degree_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "tgds/error.hpp"

namespace tgds {

DegreeSequence DegreeSequence::validate(const std::map<Count, Count>& counts) {
  std::map<Count, Count> kept;
  Count vertices = 0;
  Count edges = 0;
  for (const auto& [children, n] : counts) {
    if (children < 0 || n < 0) {
      throw Error(ErrorCode::kConstraintViolation, "negative child count or multiplicity");
    }
    if (n == 0) continue;
    kept.emplace(children, n);
    vertices += n;
    edges += children * n;
  }
  if (vertices == 0) throw Error(ErrorCode::kEmpty, "degree sequence has no vertices");
  if (vertices != 1 + edges) {
    std::ostringstream os;
    os << "sum N_i = " << vertices << " but 1 + sum i N_i = " << 1 + edges;
    throw Error(ErrorCode::kConstraintViolation, os.str());
  }
  return DegreeSequence(std::move(kept), vertices);
}

Count DegreeSequence::count(Count children) const {
  const auto it = counts_.find(children);
  return it == counts_.end() ? 0 : it->second;
}

DegreeStats stats(const DegreeSequence& ds) {
  DegreeStats s;
  s.num_vertices = ds.num_vertices();
  s.num_edges = ds.num_edges();
  for (const auto& [i, n] : ds.counts()) s.sigma2 += i * (i - 1) * n;
  s.max_degree = ds.counts().rbegin()->first;
  return s;
}

std::vector<Count> child_sequence(const DegreeSequence& ds) {
  std::vector<Count> out;
  out.reserve(static_cast<std::size_t>(ds.num_vertices()));
  for (auto it = ds.counts().rbegin(); it != ds.counts().rend(); ++it) {
    out.insert(out.end(), static_cast<std::size_t>(it->second), it->first);
  }
  return out;
}

DegreeSequence from_child_sequence(std::span<const Count> children) {
  std::map<Count, Count> counts;
  for (Count c : children) ++counts[c];
  return DegreeSequence::validate(counts);
}

ThetaParams theta_check(double sigma, std::vector<double> betas, bool strict,
                        bool divergent_beta) {
  if (sigma < 0.0) throw Error(ErrorCode::kInvalidArgument, "sigma must be nonnegative");
  for (double b : betas) {
    if (b < 0.0) throw Error(ErrorCode::kInvalidArgument, "betas must be nonnegative");
  }
  std::sort(betas.begin(), betas.end(), std::greater<>());
  ThetaParams p;
  p.sigma = sigma;
  const double total =
      sigma * sigma + std::inner_product(betas.begin(), betas.end(), betas.begin(), 0.0);
  p.betas = std::move(betas);
  p.normalized = std::abs(total - 1.0) <= kThetaTolerance;
  if (strict && !p.normalized) {
    std::ostringstream os;
    os << "sigma^2 + sum beta^2 = " << total;
    throw Error(ErrorCode::kNotNormalized, os.str());
  }
  p.divergent_beta = divergent_beta;
  // A finite list always has a finite sum; the divergent regime is a marker only.
  p.condition_b = sigma > 0.0 && !divergent_beta;
  p.condition_a4 = sigma > 0.0 || divergent_beta;
  return p;
}

std::string to_string(Trend trend) {
  switch (trend) {
    case Trend::kIncreasing: return "increasing";
    case Trend::kDecreasing: return "decreasing";
    case Trend::kStable: return "stable";
    case Trend::kMixed: return "mixed";
  }
  return "mixed";
}

namespace {

Trend classify(const std::vector<double>& xs) {
  constexpr double kEps = 1e-12;
  bool up = false;
  bool down = false;
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const double d = xs[k] - xs[k - 1];
    if (d > kEps * std::max(1.0, std::abs(xs[k - 1]))) up = true;
    if (d < -kEps * std::max(1.0, std::abs(xs[k - 1]))) down = true;
  }
  if (up && down) return Trend::kMixed;
  if (up) return Trend::kIncreasing;
  if (down) return Trend::kDecreasing;
  return Trend::kStable;
}

constexpr std::size_t kHubColumns = 10;

}  // namespace

HypothesisReport hypothesis_report(
    const std::vector<std::pair<DegreeSequence, double>>& family) {
  if (family.size() < 2) {
    throw Error(ErrorCode::kTooFewPoints, "hypothesis report needs at least two sequences");
  }
  HypothesisReport report;
  for (const auto& [ds, b_n] : family) {
    if (!(b_n > 0.0)) throw Error(ErrorCode::kInvalidArgument, "b_n must be positive");
    HypothesisRow row;
    row.num_vertices = ds.num_vertices();
    row.b_n = b_n;
    row.hub_ratios.assign(kHubColumns, 0.0);
    std::size_t filled = 0;
    for (auto it = ds.counts().rbegin(); it != ds.counts().rend() && filled < kHubColumns; ++it) {
      for (Count k = 0; k < it->second && filled < kHubColumns; ++k) {
        row.hub_ratios[filled++] = static_cast<double>(it->first) / b_n;
      }
    }
    double var = 0.0;
    for (const auto& [i, n] : ds.counts()) {
      const double d = static_cast<double>(i - 1);
      var += d * d * static_cast<double>(n);
    }
    row.variance_ratio = var / (b_n * b_n);
    row.size_ratio = static_cast<double>(row.num_vertices) / b_n;
    double hub_sq = 0.0;
    for (double h : row.hub_ratios) hub_sq += h * h;
    row.sigma2_estimate = row.variance_ratio - hub_sq;
    report.rows.push_back(std::move(row));
  }

  auto column = [&](auto proj) {
    std::vector<double> xs;
    for (const auto& r : report.rows) xs.push_back(proj(r));
    return classify(xs);
  };
  report.size_trend = column([](const HypothesisRow& r) { return double(r.num_vertices); });
  for (std::size_t i = 0; i < kHubColumns; ++i) {
    report.hub_trends.push_back(column([i](const HypothesisRow& r) { return r.hub_ratios[i]; }));
  }
  report.variance_trend = column([](const HypothesisRow& r) { return r.variance_ratio; });
  report.sigma2_trend = column([](const HypothesisRow& r) { return r.sigma2_estimate; });
  report.last_sigma2_estimate = report.rows.back().sigma2_estimate;
  for (double h : report.rows.back().hub_ratios) report.last_beta_sum += h;
  return report;
}

std::string to_json(const DegreeSequence& ds) {
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [i, n] : ds.counts()) counts[std::to_string(i)] = n;
  nlohmann::ordered_json j;
  j["counts"] = counts;
  return j.dump();
}

DegreeSequence degree_sequence_from_json(const std::string& text) {
  std::map<Count, Count> counts;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& [key, value] : j.at("counts").items()) {
      counts[std::stoll(key)] += value.get<Count>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("degree sequence JSON: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("degree sequence JSON key: ") + e.what());
  }
  return DegreeSequence::validate(counts);
}

std::string to_csv(const DegreeSequence& ds) {
  std::ostringstream os;
  os << "i,N_i\n";
  for (const auto& [i, n] : ds.counts()) os << i << ',' << n << '\n';
  return os.str();
}

DegreeSequence degree_sequence_from_csv(const std::string& text) {
  std::map<Count, Count> counts;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (line.front() == 'i' || line.front() == '#') continue;  // header / comment
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "degree sequence CSV row without comma: " + line);
    }
    try {
      counts[std::stoll(line.substr(0, comma))] += std::stoll(line.substr(comma + 1));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kInvalidArgument, "degree sequence CSV row: " + line);
    }
  }
  return DegreeSequence::validate(counts);
}

}  // namespace tgds

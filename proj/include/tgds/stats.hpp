#pragma once

#include <cstddef>
#include <vector>

#include "tgds/degree_sequence.hpp"

namespace tgds {

struct KSResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

// Throws TooFewSamples when either side has fewer than 10 values.
KSResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Kolmogorov tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
};

double chi_square_pvalue(double statistic, double dof);

// Goodness of fit against equal cell probabilities.
ChiSquareResult chi_square_uniform(const std::vector<Count>& counts);

double median(std::vector<double> xs);
double mean(const std::vector<double>& xs);

}  // namespace tgds

#pragma once

#include <vector>

namespace png::stats {

// Upper tail of the chi-square law.
double chi_square_pvalue(double statistic, int dof);

// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// One-sample test against Uniform(0, 1), asymptotic with the small-sample
// correction sqrt(n) + 0.12 + 0.11 / sqrt(n).
KsResult ks_uniform(std::vector<double> values);
// Two-sample test; ties make the asymptotic p-value conservative.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// P(N1 - N2 = k) for independent Poisson(mu1), Poisson(mu2).
double skellam_pmf(long k, double mu1, double mu2);

// Two-sided normal tail of a z-score.
double normal_two_sided(double z);

}  // namespace png::stats

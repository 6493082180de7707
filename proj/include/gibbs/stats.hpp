#pragma once

#include <span>

namespace gibbs {

/// Mean of independent replica estimates with its standard error
/// (sample std / sqrt(n)) and a two-sided Student-t confidence interval on
/// n - 1 degrees of freedom.  With a single replica the error is zero and the
/// interval degenerates to the mean.
struct ReplicaSummary {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double level = 0.95;
};

ReplicaSummary summarize(std::span<const double> values, double level = 0.95);

/// Quantile of Student's t distribution.
double student_t_quantile(double p, double dof);

/// Two-sided p-value of Welch's unequal-variance t-test for equal means.
double welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace gibbs

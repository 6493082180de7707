#include "gibbs/measure.hpp"

#include <cmath>

#include "gibbs/error.hpp"

namespace gibbs {

double conformal_normalisation(const SpectralData& data, ConformalWeights which) {
  const auto& v = which == ConformalWeights::kLeftEigenvector ? data.nu : data.h;
  double total = 0.0;
  for (double w : v) total += w;
  if (std::abs(total) <= 1e-10) {
    throw NumericalError("conformal normalisation sum_j v_j vanishes");
  }
  return total;
}

}  // namespace gibbs

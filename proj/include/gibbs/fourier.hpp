#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "gibbs/sampler.hpp"
#include "gibbs/spectral.hpp"
#include "gibbs/system.hpp"
#include "gibbs/ulam.hpp"

namespace gibbs {

/// exp(-i xi x).  Above |xi| = 1e9 the product xi x is split exactly into
/// p + e (fma) so the rounding error of the phase is not lost.
std::complex<double> unit_phasor(double xi, double x);

/// Fourier transform convention: mu^(xi) = int exp(-i xi x) dmu(x).
std::complex<double> fourier_direct(const SpectralData& data, double xi);

struct DirectFourier {
  std::complex<double> value;
  /// |xi| > N c_est: the grid no longer resolves the oscillation.
  bool beyond_resolution = false;
};

DirectFourier fourier_direct(const SpectralData& data, double xi, double c_est);

/// Exact transform of the Bernoulli(1/2, 1/2) measure on the two-branch
/// affine IFS x -> r x +- (1 - r):  prod_k cos((1 - r) r^k xi).  The product
/// stops once the factor's argument drops below sqrt(tol) and the remaining
/// factors are replaced by their Gaussian approximation.
std::complex<double> cantor_oracle(double r, double xi, double tol = 1e-15);

enum class FourierMethod { kDirect, kMonteCarlo, kOracle, kUlam };

std::string_view method_name(FourierMethod m);
FourierMethod parse_method(std::string_view name);

struct FourierSweep {
  FourierMethod method = FourierMethod::kDirect;
  std::vector<double> xis;
  std::vector<std::complex<double>> values;
  /// Per-frequency standard error of the complex mean (Monte Carlo only).
  std::vector<double> std_errors;
  std::optional<FourierMethod> reference;
  std::vector<std::complex<double>> reference_values;
  /// |value - reference| per frequency, when a reference is set.
  std::vector<double> errors;
};

/// Everything a method may need; unused members may stay empty.
struct FourierInputs {
  const IFSSystem* system = nullptr;
  const SpectralData* spectral = nullptr;
  const UlamOperator* ulam = nullptr;
  std::optional<double> cantor_ratio;
  SamplerConfig sampler;
  double oracle_tol = 1e-15;
};

/// Monte Carlo transform: one orbit per replica, every frequency accumulated
/// along the same orbit.
FourierSweep fourier_mc(const IFSSystem& system, const SpectralData& data,
                        const SamplerConfig& config,
                        const std::vector<double>& xis);

/// Evaluates a method (and optional reference) at the given frequencies.
FourierSweep evaluate(FourierMethod method, const FourierInputs& inputs,
                      std::vector<double> xis,
                      std::optional<FourierMethod> reference = std::nullopt);

/// count >= 2 uniformly spaced frequencies from start to end inclusive.
std::vector<double> frequency_grid(double start, double end, std::size_t count);

FourierSweep sweep(FourierMethod method, const FourierInputs& inputs,
                   double xi_start, double xi_end, std::size_t count,
                   std::optional<FourierMethod> reference = std::nullopt);

/// CSV with a "# schema=1" line, then columns
///   xi,re,im,abs[,std_error][,ref_abs,abs_error]
/// at 17 significant digits.
void write_csv(const FourierSweep& sweep, std::ostream& out);

}  // namespace gibbs

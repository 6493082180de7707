#include "gibbs/fourier.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "gibbs/error.hpp"
#include "gibbs/measure.hpp"
#include "gibbs/parallel.hpp"

namespace gibbs {

namespace {

constexpr double kSplitPhaseAbove = 1e9;

}  // namespace

std::complex<double> unit_phasor(double xi, double x) {
  if (std::abs(xi) <= kSplitPhaseAbove) {
    const double p = xi * x;
    return {std::cos(p), -std::sin(p)};
  }
  // xi x = p + e exactly; cos/sin reduce p itself without loss, and the
  // residual rotation by e is applied separately.
  const double p = xi * x;
  const double e = std::fma(xi, x, -p);
  const std::complex<double> main(std::cos(p), -std::sin(p));
  const std::complex<double> tail(std::cos(e), -std::sin(e));
  return main * tail;
}

std::complex<double> fourier_direct(const SpectralData& data, double xi) {
  // mu is a probability vector; summing it again would only add rounding.
  if (xi == 0.0) return 1.0;
  return integrate(data, [xi](double x) { return unit_phasor(xi, x); }).value;
}

DirectFourier fourier_direct(const SpectralData& data, double xi,
                             double c_est) {
  return {fourier_direct(data, xi),
          std::abs(xi) > static_cast<double>(data.size()) * c_est};
}

std::complex<double> cantor_oracle(double r, double xi, double tol) {
  if (!(r > 0.0 && r <= 0.5)) {
    throw ConfigError(fmt::format("oracle ratio r = {} not in (0, 1/2]", r));
  }
  if (!(tol > 0.0)) throw ConfigError("oracle tolerance must be positive");
  const double threshold = std::sqrt(tol);
  const double scale = (1.0 - r) * std::abs(xi);
  double product = 1.0;
  double a = scale;
  for (int k = 0; a >= threshold; ++k) {
    product *= std::cos(a);
    a = scale * std::pow(r, k + 1);
  }
  // prod_{k >= K} cos(a r^k) ~ exp(-a^2 / (2 (1 - r^2)))
  product *= std::exp(-a * a / (2.0 * (1.0 - r * r)));
  return {product, 0.0};
}

std::string_view method_name(FourierMethod m) {
  switch (m) {
    case FourierMethod::kDirect:
      return "direct";
    case FourierMethod::kMonteCarlo:
      return "mc";
    case FourierMethod::kOracle:
      return "oracle";
    case FourierMethod::kUlam:
      return "ulam";
  }
  return "direct";
}

FourierMethod parse_method(std::string_view name) {
  if (name == "direct") return FourierMethod::kDirect;
  if (name == "mc" || name == "monte_carlo") return FourierMethod::kMonteCarlo;
  if (name == "oracle") return FourierMethod::kOracle;
  if (name == "ulam") return FourierMethod::kUlam;
  throw ConfigError(fmt::format("unknown Fourier method '{}'", name));
}

FourierSweep fourier_mc(const IFSSystem& system, const SpectralData& data,
                        const SamplerConfig& config,
                        const std::vector<double>& xis) {
  validate(config, data);
  const MarkovChain chain(system, data, config.remainder_denominator);
  const std::size_t nf = xis.size();
  const std::size_t R = config.replicas;
  // replica r, frequency f -> sum of exp(-i xi_f x_t)
  std::vector<std::complex<double>> sums(R * nf);
  parallel_for(R, [&](std::size_t r) {
    ReplicaRng rng(config.seed, r);
    std::complex<double>* row = sums.data() + r * nf;
    chain.run(config.T0, config.T, rng, [&](const MarkovChain::State& s) {
      for (std::size_t f = 0; f < nf; ++f) row[f] += unit_phasor(xis[f], s.x);
    });
  });

  FourierSweep out;
  out.method = FourierMethod::kMonteCarlo;
  out.xis = xis;
  out.values.resize(nf);
  out.std_errors.resize(nf);
  const double T = static_cast<double>(config.T);
  std::vector<double> re(R), im(R);
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t r = 0; r < R; ++r) {
      re[r] = sums[r * nf + f].real() / T;
      im[r] = sums[r * nf + f].imag() / T;
    }
    const auto sre = summarize(re), sim = summarize(im);
    out.values[f] = {sre.mean, sim.mean};
    out.std_errors[f] = std::hypot(sre.std_error, sim.std_error);
  }
  return out;
}

namespace {

template <class T>
const T& require(const T* p, std::string_view what, FourierMethod m) {
  if (p == nullptr) {
    throw ConfigError(fmt::format("method '{}' needs {}", method_name(m), what));
  }
  return *p;
}

std::vector<std::complex<double>> pointwise(
    const std::vector<double>& xis,
    const std::function<std::complex<double>(double)>& f) {
  std::vector<std::complex<double>> values(xis.size());
  parallel_for(xis.size(), [&](std::size_t i) { values[i] = f(xis[i]); });
  return values;
}

FourierSweep run_method(FourierMethod method, const FourierInputs& in,
                        const std::vector<double>& xis) {
  FourierSweep s;
  s.method = method;
  s.xis = xis;
  switch (method) {
    case FourierMethod::kDirect: {
      const auto& data = require(in.spectral, "spectral data", method);
      s.values = pointwise(xis, [&](double xi) { return fourier_direct(data, xi); });
      break;
    }
    case FourierMethod::kMonteCarlo:
      return fourier_mc(require(in.system, "a system", method),
                        require(in.spectral, "spectral data", method), in.sampler,
                        xis);
    case FourierMethod::kOracle: {
      if (!in.cantor_ratio) {
        throw ConfigError(
            "the oracle is only available for the equal-weight Cantor preset");
      }
      const double r = *in.cantor_ratio;
      s.values = pointwise(
          xis, [&](double xi) { return cantor_oracle(r, xi, in.oracle_tol); });
      break;
    }
    case FourierMethod::kUlam: {
      const auto& op = require(in.ulam, "an Ulam operator", method);
      s.values = pointwise(xis, [&](double xi) { return ulam_fourier(op, xi); });
      break;
    }
  }
  return s;
}

}  // namespace

FourierSweep evaluate(FourierMethod method, const FourierInputs& inputs,
                      std::vector<double> xis,
                      std::optional<FourierMethod> reference) {
  FourierSweep s = run_method(method, inputs, xis);
  if (reference) {
    const FourierSweep ref = run_method(*reference, inputs, xis);
    s.reference = reference;
    s.reference_values = ref.values;
    s.errors.resize(xis.size());
    for (std::size_t i = 0; i < xis.size(); ++i) {
      s.errors[i] = std::abs(s.values[i] - ref.values[i]);
    }
  }
  return s;
}

std::vector<double> frequency_grid(double start, double end, std::size_t count) {
  if (count < 2) throw ConfigError("a frequency sweep needs count >= 2");
  if (!(start < end)) throw ConfigError("a frequency sweep needs start < end");
  std::vector<double> xis(count);
  const double step = (end - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    xis[i] = start + step * static_cast<double>(i);
  }
  xis.back() = end;
  return xis;
}

FourierSweep sweep(FourierMethod method, const FourierInputs& inputs,
                   double xi_start, double xi_end, std::size_t count,
                   std::optional<FourierMethod> reference) {
  return evaluate(method, inputs, frequency_grid(xi_start, xi_end, count),
                  reference);
}

void write_csv(const FourierSweep& s, std::ostream& out) {
  const bool mc = !s.std_errors.empty();
  const bool ref = s.reference.has_value();
  out << "# schema=1\n";
  out << "xi,re,im,abs";
  if (mc) out << ",std_error";
  if (ref) out << ",ref_abs,abs_error";
  out << '\n';
  for (std::size_t i = 0; i < s.xis.size(); ++i) {
    fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g}", s.xis[i],
               s.values[i].real(), s.values[i].imag(), std::abs(s.values[i]));
    if (mc) fmt::print(out, ",{:.17g}", s.std_errors[i]);
    if (ref) {
      fmt::print(out, ",{:.17g},{:.17g}", std::abs(s.reference_values[i]),
                 s.errors[i]);
    }
    out << '\n';
  }
}

}  // namespace gibbs

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "gibbs/spectral.hpp"
#include "gibbs/stats.hpp"
#include "gibbs/system.hpp"

namespace gibbs {

struct SamplerConfig {
  std::uint64_t T = 1'000'000;  // retained steps per replica
  std::uint64_t T0 = 10'000;    // burn-in steps, discarded
  std::uint64_t seed = 0;
  unsigned replicas = 8;
  /// Grid size behind h_N.  0 accepts whatever the spectral data carries;
  /// otherwise it must match.
  std::size_t N = 0;
  /// Normalise by exp(P_N) h_N(x) and give the last branch the remaining
  /// probability, instead of the exact denominator (L h_N)(x).
  bool remainder_denominator = false;
  /// Conformal estimator in ratio form sum psi/h / sum 1/h (default) or the
  /// unnormalised mean (1/T) sum psi/h.
  bool self_normalised_conformal = true;
};

/// Replica results of a Birkhoff-mean estimate.
struct SampleRun {
  SamplerConfig config;
  std::vector<double> replica_values;
  ReplicaSummary summary;

  double estimate() const { return summary.mean; }
  double std_error() const { return summary.std_error; }
};

/// Independent, reproducible random stream for one replica.
class ReplicaRng {
 public:
  ReplicaRng(std::uint64_t seed, std::uint64_t replica);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// The Markov chain x_{t+1} = g_i(x_t) with branch probabilities
///   p_i(x) = exp(phi_i(x)) h_N(g_i(x)) / (L_phi h_N)(x),
/// whose stationary law approximates the equilibrium measure.
class MarkovChain {
 public:
  struct State {
    double x = 0.0;
    double h = 1.0;  // h_N(x)
  };

  MarkovChain(const IFSSystem& system, const SpectralData& data,
              bool remainder_denominator = false);

  /// Exact probability vector over the branches at x.  Throws NumericalError
  /// if h_N is not positive at some image g_i(x).
  std::vector<double> probabilities(double x) const;

  State start(ReplicaRng& rng) const;
  State step(const State& s, ReplicaRng& rng) const;

  /// Burn-in of T0 steps from a uniform start, then visit(state) for each of
  /// the T retained points.
  template <class Visit>
  void run(std::uint64_t T0, std::uint64_t T, ReplicaRng& rng,
           Visit&& visit) const {
    State s = start(rng);
    for (std::uint64_t t = 0; t < T0; ++t) s = step(s, rng);
    for (std::uint64_t t = 0; t < T; ++t) {
      s = step(s, rng);
      visit(s);
    }
  }

  const IFSSystem& system() const noexcept { return system_; }
  const SpectralData& spectral() const noexcept { return data_; }

 private:
  double h_at(double y) const;

  const IFSSystem& system_;
  const SpectralData& data_;
  bool remainder_;
};

std::vector<double> branch_probabilities(const IFSSystem& system,
                                         const SpectralData& data, double x);

/// Birkhoff means M_T(psi) over independent replicas (run concurrently).
SampleRun run_chain(const IFSSystem& system, const SpectralData& data,
                    const SamplerConfig& config,
                    const std::function<double(double)>& psi);

/// Conformal-measure estimate obtained by reweighting the samples by 1/h_N.
SampleRun run_chain_conformal(const IFSSystem& system, const SpectralData& data,
                              const SamplerConfig& config,
                              const std::function<double(double)>& psi);

/// The first `count` retained points of replica 0.
std::vector<double> sample_orbit(const IFSSystem& system,
                                 const SpectralData& data,
                                 const SamplerConfig& config, std::size_t count);

void validate(const SamplerConfig& config, const SpectralData& data);

}  // namespace gibbs

#include "gibbs/sampler.hpp"

#include <cmath>

#include <fmt/format.h>

#include "gibbs/error.hpp"
#include "gibbs/parallel.hpp"

namespace gibbs {

ReplicaRng::ReplicaRng(std::uint64_t seed, std::uint64_t replica) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replica),
                    static_cast<std::uint32_t>(replica >> 32), 0x9e3779b9u};
  engine_.seed(seq);
}

MarkovChain::MarkovChain(const IFSSystem& system, const SpectralData& data,
                         bool remainder_denominator)
    : system_(system), data_(data), remainder_(remainder_denominator) {}

double MarkovChain::h_at(double y) const {
  const double h = data_.grid.interpolate(data_.h, y);
  if (!(h > 0.0)) {
    throw NumericalError(fmt::format(
        "h_N({}) = {} is not positive; increase N", y, h));
  }
  return h;
}

std::vector<double> MarkovChain::probabilities(double x) const {
  std::vector<double> p;
  p.reserve(system_.size());
  double total = 0.0;
  for (const auto& b : system_.branches()) {
    p.push_back(std::exp(b.weight.eval(x)) * h_at(b.map.eval(x)));
    total += p.back();
  }
  for (double& v : p) v /= total;
  return p;
}

MarkovChain::State MarkovChain::start(ReplicaRng& rng) const {
  State s;
  s.x = -1.0 + 2.0 * rng.uniform();
  s.h = h_at(s.x);
  return s;
}

MarkovChain::State MarkovChain::step(const State& s, ReplicaRng& rng) const {
  const auto branches = system_.branches();
  const std::size_t last = branches.size() - 1;
  const double u = rng.uniform();

  if (remainder_) {
    // Probabilities exp(phi_i) h(g_i x) / (lambda h(x)) for all but the last
    // branch, which takes whatever mass remains.
    const double denom = data_.eigenvalue * s.h;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < last; ++i) {
      const double y = branches[i].map.eval(s.x);
      const double hy = h_at(y);
      cumulative += std::exp(branches[i].weight.eval(s.x)) * hy / denom;
      if (u < cumulative) return {y, hy};
    }
    const double y = branches[last].map.eval(s.x);
    return {y, h_at(y)};
  }

  thread_local std::vector<State> images;
  thread_local std::vector<double> mass;
  images.resize(branches.size());
  mass.resize(branches.size());
  double total = 0.0;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const double y = branches[i].map.eval(s.x);
    const double hy = h_at(y);
    images[i] = {y, hy};
    mass[i] = std::exp(branches[i].weight.eval(s.x)) * hy;
    total += mass[i];
  }
  const double target = u * total;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < last; ++i) {
    cumulative += mass[i];
    if (target < cumulative) return images[i];
  }
  return images[last];
}

std::vector<double> branch_probabilities(const IFSSystem& system,
                                         const SpectralData& data, double x) {
  return MarkovChain(system, data).probabilities(clamp_to_interval(x));
}

void validate(const SamplerConfig& config, const SpectralData& data) {
  if (config.T < 1) throw ConfigError("T must be at least 1");
  if (config.replicas < 1) throw ConfigError("replicas must be at least 1");
  if (config.N != 0 && config.N != data.size()) {
    throw ConfigError(fmt::format(
        "sampler configured for N = {} but spectral data has N = {}", config.N,
        data.size()));
  }
}

namespace {

template <class Accumulate>
SampleRun replicate(const IFSSystem& system, const SpectralData& data,
                    const SamplerConfig& config, Accumulate&& per_replica) {
  validate(config, data);
  const MarkovChain chain(system, data, config.remainder_denominator);
  SampleRun run;
  run.config = config;
  run.replica_values.resize(config.replicas);
  parallel_for(config.replicas, [&](std::size_t r) {
    ReplicaRng rng(config.seed, r);
    run.replica_values[r] = per_replica(chain, rng);
  });
  run.summary = summarize(run.replica_values);
  return run;
}

}  // namespace

SampleRun run_chain(const IFSSystem& system, const SpectralData& data,
                    const SamplerConfig& config,
                    const std::function<double(double)>& psi) {
  return replicate(system, data, config,
                   [&](const MarkovChain& chain, ReplicaRng& rng) {
                     double sum = 0.0;
                     chain.run(config.T0, config.T, rng,
                               [&](const MarkovChain::State& s) {
                                 sum += psi(s.x);
                               });
                     return sum / static_cast<double>(config.T);
                   });
}

SampleRun run_chain_conformal(const IFSSystem& system, const SpectralData& data,
                              const SamplerConfig& config,
                              const std::function<double(double)>& psi) {
  return replicate(
      system, data, config, [&](const MarkovChain& chain, ReplicaRng& rng) {
        double weighted = 0.0, mass = 0.0;
        chain.run(config.T0, config.T, rng, [&](const MarkovChain::State& s) {
          const double w = 1.0 / s.h;
          weighted += psi(s.x) * w;
          mass += w;
        });
        return config.self_normalised_conformal
                   ? weighted / mass
                   : weighted / static_cast<double>(config.T);
      });
}

std::vector<double> sample_orbit(const IFSSystem& system,
                                 const SpectralData& data,
                                 const SamplerConfig& config,
                                 std::size_t count) {
  validate(config, data);
  const MarkovChain chain(system, data, config.remainder_denominator);
  ReplicaRng rng(config.seed, 0);
  std::vector<double> orbit;
  orbit.reserve(count);
  chain.run(config.T0, count, rng,
            [&](const MarkovChain::State& s) { orbit.push_back(s.x); });
  return orbit;
}

}  // namespace gibbs

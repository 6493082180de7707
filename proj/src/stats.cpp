#include "gibbs/stats.hpp"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "gibbs/error.hpp"

namespace gibbs {

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

Moments moments(std::span<const double> v) {
  Moments m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    for (double x : v) m.variance += (x - m.mean) * (x - m.mean);
    m.variance /= static_cast<double>(v.size() - 1);
  }
  return m;
}

}  // namespace

double student_t_quantile(double p, double dof) {
  boost::math::students_t dist(dof);
  return boost::math::quantile(dist, p);
}

ReplicaSummary summarize(std::span<const double> values, double level) {
  if (values.empty()) throw ConfigError("no replica values to summarise");
  if (!(level > 0.0 && level < 1.0)) {
    throw ConfigError("confidence level must lie in (0, 1)");
  }
  const auto m = moments(values);
  ReplicaSummary s;
  s.mean = m.mean;
  s.level = level;
  s.ci_low = s.ci_high = m.mean;
  if (values.size() > 1) {
    s.std_error = std::sqrt(m.variance / static_cast<double>(values.size()));
    const double t = student_t_quantile(0.5 + level / 2.0,
                                        static_cast<double>(values.size() - 1));
    s.ci_low = m.mean - t * s.std_error;
    s.ci_high = m.mean + t * s.std_error;
  }
  return s;
}

double welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw ConfigError("Welch's test needs at least two values per sample");
  }
  const auto ma = moments(a), mb = moments(b);
  const double va = ma.variance / static_cast<double>(a.size());
  const double vb = mb.variance / static_cast<double>(b.size());
  if (va + vb == 0.0) return ma.mean == mb.mean ? 1.0 : 0.0;
  const double t = (ma.mean - mb.mean) / std::sqrt(va + vb);
  const double dof =
      (va + vb) * (va + vb) /
      (va * va / static_cast<double>(a.size() - 1) +
       vb * vb / static_cast<double>(b.size() - 1));
  boost::math::students_t dist(dof);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

}  // namespace gibbs

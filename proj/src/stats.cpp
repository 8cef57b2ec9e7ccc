#include "bayespoker/stats.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace bayespoker {

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // unbiased
};

Moments moments(std::span<const double> x) {
  Moments m;
  if (x.empty()) return m;
  // Welford keeps long series stable.
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (double v : x) {
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  m.mean = mean;
  m.var = x.size() > 1 ? m2 / static_cast<double>(x.size() - 1) : 0.0;
  return m;
}

double ratio_or_inf(double num, double se) {
  if (se > 0.0) return num / se;
  if (num == 0.0) return 0.0;
  return num > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

}  // namespace

double normal_two_tailed_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

MatchStats summarize(std::span<const double> nets) {
  MatchStats s;
  s.nets.assign(nets.begin(), nets.end());
  s.cumulative.reserve(nets.size());
  double run = 0.0;
  for (double v : nets) s.cumulative.push_back(run += v);
  s.n = nets.size();
  const Moments m = moments(nets);
  s.mean = m.mean;
  s.sd = std::sqrt(m.var);
  if (s.n >= 2) {
    s.t = ratio_or_inf(s.mean, s.sd / std::sqrt(static_cast<double>(s.n)));
    s.p = normal_two_tailed_p(s.t);
  }
  return s;
}

TwoSampleTest two_sample_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("two-sample test needs at least 2 values per sample");
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  TwoSampleTest r;
  r.n_a = a.size();
  r.n_b = b.size();
  r.mean_a = ma.mean;
  r.mean_b = mb.mean;
  const double se = std::sqrt(ma.var / static_cast<double>(a.size()) + mb.var / static_cast<double>(b.size()));
  r.t = ratio_or_inf(mb.mean - ma.mean, se);
  r.p = normal_two_tailed_p(r.t);
  return r;
}

TwoSampleTest learning_effect(std::span<const double> nets, std::size_t window) {
  if (window < 2 || nets.size() < 2 * window)
    throw std::invalid_argument("learning_effect needs at least " + std::to_string(2 * window) + " games, got " +
                                std::to_string(nets.size()));
  return two_sample_t_test(nets.first(window), nets.last(window));
}

}  // namespace bayespoker

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace bayespoker {

/// Summary of a per-game net winnings series, tested against a zero mean.
struct MatchStats {
  std::vector<double> nets;
  std::vector<double> cumulative;
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n - 1)
  double t = 0.0;
  double p = 1.0;   // two-tailed, normal approximation
};

MatchStats summarize(std::span<const double> nets);

/// Two-tailed tail probability of a standard normal: P(|Z| >= |z|).
double normal_two_tailed_p(double z);

struct TwoSampleTest {
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double t = 0.0;  // (mean_b - mean_a) / standard error, Welch form
  double p = 1.0;
};

TwoSampleTest two_sample_t_test(std::span<const double> a, std::span<const double> b);

/// Compares the first `window` games with the last `window`.
TwoSampleTest learning_effect(std::span<const double> nets, std::size_t window = 200);

}  // namespace bayespoker

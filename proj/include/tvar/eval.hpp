#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tvar/basis.hpp"

namespace tvar {

// A seeded signal generator: one call = one trial draw.
struct Scenario {
  std::string description;
  std::function<Eigen::VectorXd(std::uint64_t trial_seed)> generate;
};

using StatisticFn = std::function<double(const Eigen::VectorXd&)>;

struct RocCurve {
  // (false alarm, detection) pairs, nondecreasing in both coordinates,
  // anchored at (0,0) and (1,1).
  std::vector<std::pair<double, double>> points;
  int n_trials_h0 = 0;
  int n_trials_h1 = 0;
  std::uint64_t seed = 0;
  std::string scenario;
};

// Empirical ROC from seeded Monte-Carlo draws under both hypotheses,
// sweeping the threshold over the pooled statistic values.  Per-trial
// seeds are derived from (seed, hypothesis, trial), so results are
// reproducible and independent of threads.  Any trial failure is
// rethrown as ScenarioError naming the trial seed.  trials >= 100.
RocCurve run_roc(const Scenario& h0, const Scenario& h1,
                 const StatisticFn& statistic, int trials,
                 std::uint64_t seed, int threads = 0);

// Statistic draws under one scenario (building block of run_roc).
std::vector<double> draw_statistics(const Scenario& scenario,
                                    const StatisticFn& statistic, int trials,
                                    std::uint64_t seed,
                                    std::uint64_t hypothesis_tag,
                                    int threads = 0);

struct FalseAlarmEstimate {
  double rate = 0.0;
  double std_error = 0.0;  // binomial
  int trials = 0;
};

// Fraction of stationary AR(p) draws (fixed stable coefficients) whose
// statistic exceeds the CFAR threshold for the given rate.
// trials >= 500.
FalseAlarmEstimate empirical_false_alarm(int p, int q, int n,
                                         double cfar_rate, int trials,
                                         std::uint64_t seed, int threads = 0);

// Kolmogorov-Smirnov distance between a sample (>= 500 values) and the
// chi-squared distribution with dof degrees of freedom.
double ks_distance(std::vector<double> samples, int dof);

// Two-sample KS distance between empirical distributions.
double two_sample_ks_distance(std::vector<double> a, std::vector<double> b);

// Trapezoid area under an ROC curve.
double auc(const RocCurve& curve);

// Detection rate at a given false-alarm rate, linearly interpolated
// along the curve.
double detection_rate_at_false_alarm(const RocCurve& curve,
                                     double false_alarm);

// Resonator scenario with a frequency step of delta rad/sample at the
// window midpoint (delta = 0 gives the stationary null): baseline
// omega = pi/4, 100 Hz bandwidth, unit gain at 16 kHz.
Scenario resonator_jump_scenario(double delta, int n);

// Resonator scenario whose center frequency ramps linearly from
// omega0 - delta/2 to omega0 + delta/2 across the window.
Scenario resonator_ramp_scenario(double delta, int n);

// Covariance-method GLRT statistic as a reusable StatisticFn.
StatisticFn glrt_statistic_fn(int p, int q,
                              BasisKind kind = BasisKind::Legendre);

// Window-choice study on short time-varying AR data: the same
// detection problem scored with the covariance-method statistic and
// with autocorrelation-method statistics under rectangular and Hamming
// data windows.  Signals are order-p draws of length n, constant under
// H0 and with degree-q_true Legendre coefficient tracks under H1; all
// fits use one extra AR order (p+1) to absorb windowing artifacts.
// trials >= 1000.
struct WindowingStudy {
  RocCurve covariance;
  RocCurve autocorr_rect;
  RocCurve autocorr_hamming;
  std::vector<double> h0_stats_rect;
  std::vector<double> h0_stats_hamming;
};

WindowingStudy windowing_study(int p, int q_true, int n, int trials,
                               std::uint64_t seed, int threads = 0);

}  // namespace tvar

#include "tvar/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "tvar/errors.hpp"
#include "tvar/estimation.hpp"
#include "tvar/glrt.hpp"
#include "tvar/rng.hpp"
#include "tvar/synth.hpp"

namespace tvar {

namespace {

// Run f(trial) for trial = 0..trials-1, optionally across threads.
// Work is split into contiguous chunks; the caller's f must write to
// disjoint slots so the result is thread-count independent.  The first
// exception wins and is rethrown on the calling thread.
template <typename F>
void for_each_trial(int trials, int threads, F&& f) {
  if (threads <= 1) {
    for (int t = 0; t < trials; ++t) f(t);
    return;
  }
  threads = std::min(threads, trials);
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < threads; ++w) {
    const int lo = static_cast<int>(static_cast<long long>(trials) * w / threads);
    const int hi =
        static_cast<int>(static_cast<long long>(trials) * (w + 1) / threads);
    pool.emplace_back([&, lo, hi] {
      try {
        for (int t = lo; t < hi; ++t) f(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

[[noreturn]] void rethrow_as_scenario_error(std::uint64_t trial_seed,
                                            const std::exception& e) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "trial with seed %llu failed: ",
                static_cast<unsigned long long>(trial_seed));
  throw ScenarioError(std::string(buf) + e.what());
}

// Empirical ROC by sweeping the threshold down through the pooled
// statistic values; anchored at (0,0) and (1,1).
RocCurve make_roc(std::vector<double> h0, std::vector<double> h1) {
  RocCurve curve;
  curve.n_trials_h0 = static_cast<int>(h0.size());
  curve.n_trials_h1 = static_cast<int>(h1.size());
  std::sort(h0.begin(), h0.end());
  std::sort(h1.begin(), h1.end());
  std::vector<double> pooled;
  pooled.reserve(h0.size() + h1.size());
  pooled.insert(pooled.end(), h0.begin(), h0.end());
  pooled.insert(pooled.end(), h1.begin(), h1.end());
  std::sort(pooled.begin(), pooled.end(), std::greater<double>());
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());

  curve.points.emplace_back(0.0, 0.0);
  auto tail_fraction = [](const std::vector<double>& v, double threshold) {
    const auto it = std::lower_bound(v.begin(), v.end(), threshold);
    return static_cast<double>(v.end() - it) / v.size();
  };
  for (double v : pooled)
    curve.points.emplace_back(tail_fraction(h0, v), tail_fraction(h1, v));
  curve.points.emplace_back(1.0, 1.0);
  return curve;
}

Eigen::VectorXd stable_ar_draw(const Eigen::VectorXd& coeffs, int n,
                               std::uint64_t seed) {
  // Discard a lead-in so the draw starts near the stationary regime.
  const int burn = 200;
  const int p = static_cast<int>(coeffs.size());
  Rng rng(seed);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n + burn);
  for (int t = 0; t < n + burn; ++t) {
    double v = rng.normal();
    for (int i = 1; i <= p; ++i)
      if (t - i >= 0) v += coeffs(i - 1) * x(t - i);
    x(t) = v;
  }
  return x.tail(n);
}

}  // namespace

std::vector<double> draw_statistics(const Scenario& scenario,
                                    const StatisticFn& statistic, int trials,
                                    std::uint64_t seed,
                                    std::uint64_t hypothesis_tag,
                                    int threads) {
  if (trials < 1) throw InvalidArgumentError("draws: need at least one trial");
  std::vector<double> stats(trials);
  for_each_trial(trials, threads, [&](int t) {
    const std::uint64_t trial_seed = derive_seed(seed, 0, hypothesis_tag, t);
    try {
      stats[t] = statistic(scenario.generate(trial_seed));
    } catch (const std::exception& e) {
      rethrow_as_scenario_error(trial_seed, e);
    }
  });
  return stats;
}

RocCurve run_roc(const Scenario& h0, const Scenario& h1,
                 const StatisticFn& statistic, int trials, std::uint64_t seed,
                 int threads) {
  if (trials < 100)
    throw InvalidArgumentError("roc: need at least 100 trials per hypothesis");
  auto stats0 = draw_statistics(h0, statistic, trials, seed, 0, threads);
  auto stats1 = draw_statistics(h1, statistic, trials, seed, 1, threads);
  RocCurve curve = make_roc(std::move(stats0), std::move(stats1));
  curve.seed = seed;
  curve.scenario = h0.description + " vs " + h1.description;
  return curve;
}

FalseAlarmEstimate empirical_false_alarm(int p, int q, int n, double cfar_rate,
                                         int trials, std::uint64_t seed,
                                         int threads) {
  if (trials < 500)
    throw InvalidArgumentError("false-alarm estimate: need >= 500 trials");
  const double threshold = cfar_threshold(p, q, cfar_rate);
  const Eigen::VectorXd coeffs = default_stable_ar(p);
  std::vector<char> hit(trials, 0);
  for_each_trial(trials, threads, [&](int t) {
    const std::uint64_t trial_seed = derive_seed(seed, 1, 0, t);
    try {
      auto x = stable_ar_draw(coeffs, n, trial_seed);
      auto basis = make_basis(BasisKind::Legendre, q, n);
      hit[t] = glrt_statistic(x, p, basis).statistic > threshold ? 1 : 0;
    } catch (const std::exception& e) {
      rethrow_as_scenario_error(trial_seed, e);
    }
  });
  FalseAlarmEstimate est;
  est.trials = trials;
  est.rate = static_cast<double>(std::count(hit.begin(), hit.end(), 1)) /
             trials;
  est.std_error = std::sqrt(est.rate * (1.0 - est.rate) / trials);
  return est;
}

double ks_distance(std::vector<double> samples, int dof) {
  const int n = static_cast<int>(samples.size());
  if (n < 500)
    throw InvalidArgumentError("ks distance: need >= 500 samples");
  std::sort(samples.begin(), samples.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = std::isinf(samples[i]) && samples[i] > 0
                         ? 1.0
                         : chi2_cdf(dof, samples[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double two_sample_ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw InvalidArgumentError("ks distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return std::max(d, std::abs(1.0 - (i < a.size() ? i / na : j / nb)));
}

double auc(const RocCurve& curve) {
  if (curve.points.empty())
    throw InvalidArgumentError("auc: empty curve");
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i)
    area += (curve.points[i].first - curve.points[i - 1].first) *
            (curve.points[i].second + curve.points[i - 1].second) / 2.0;
  return area;
}

double detection_rate_at_false_alarm(const RocCurve& curve,
                                     double false_alarm) {
  if (curve.points.empty())
    throw InvalidArgumentError("roc lookup: empty curve");
  // Last point at or below the requested rate (the top of a vertical
  // run), then interpolate toward the next point.
  std::size_t left = curve.points.size();
  for (std::size_t i = 0; i < curve.points.size(); ++i)
    if (curve.points[i].first <= false_alarm) left = i;
  if (left == curve.points.size()) return curve.points.front().second;
  if (left + 1 == curve.points.size()) return curve.points[left].second;
  const auto& [x0, y0] = curve.points[left];
  const auto& [x1, y1] = curve.points[left + 1];
  if (x1 == x0) return y1;
  const double u = (false_alarm - x0) / (x1 - x0);
  return y0 + u * (y1 - y0);
}

Scenario resonator_jump_scenario(double delta, int n) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "resonator frequency step: delta=%.10g rad/sample at sample "
                "%d of %d (omega0=pi/4, bw=100 Hz, fs=16 kHz)",
                delta, n / 2, n);
  Scenario s;
  s.description = buf;
  s.generate = [delta, n](std::uint64_t trial_seed) {
    ResonatorSpec spec;
    spec.n_samples = n;
    spec.sample_rate = 16000.0;
    const double omega0 = std::numbers::pi / 4.0;
    spec.center_freq = step_trajectory(n, omega0, omega0 + delta, n / 2);
    spec.bandwidth_hz = constant_trajectory(n, 100.0);
    spec.gain = 1.0;
    spec.seed = trial_seed;
    spec.burn_in = 200;
    return resonator_signal(spec);
  };
  return s;
}

Scenario resonator_ramp_scenario(double delta, int n) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "resonator frequency ramp: total delta=%.10g rad/sample over "
                "%d samples (omega0=pi/4, bw=100 Hz, fs=16 kHz)",
                delta, n);
  Scenario s;
  s.description = buf;
  s.generate = [delta, n](std::uint64_t trial_seed) {
    ResonatorSpec spec;
    spec.n_samples = n;
    spec.sample_rate = 16000.0;
    const double omega0 = std::numbers::pi / 4.0;
    spec.center_freq =
        linear_trajectory(n, omega0 - delta / 2.0, omega0 + delta / 2.0);
    spec.bandwidth_hz = constant_trajectory(n, 100.0);
    spec.gain = 1.0;
    spec.seed = trial_seed;
    spec.burn_in = 200;
    return resonator_signal(spec);
  };
  return s;
}

StatisticFn glrt_statistic_fn(int p, int q, BasisKind kind) {
  return [p, q, kind](const Eigen::VectorXd& x) {
    auto basis = make_basis(kind, q, static_cast<int>(x.size()));
    return glrt_statistic(x, p, basis).statistic;
  };
}

WindowingStudy windowing_study(int p, int q_true, int n, int trials,
                               std::uint64_t seed, int threads) {
  if (trials < 1000)
    throw InvalidArgumentError("windowing study: need >= 1000 trials");
  if (p < 1 || q_true < 1)
    throw InvalidArgumentError("windowing study: need p >= 1 and q >= 1");

  const auto basis_true = make_basis(BasisKind::Legendre, q_true, n);

  // Truth under H0: fixed stable AR(p).  Under H1 the same constant
  // part plus smooth coefficient tracks sized for mid-range detection
  // power at these record lengths (halved until every frozen-time
  // polynomial along the trajectory stays stable).
  Eigen::VectorXd alpha_h1 = Eigen::VectorXd::Zero(p * (q_true + 1));
  alpha_h1.head(p) = default_stable_ar(p);
  for (int j = 1; j <= q_true; ++j)
    for (int i = 1; i <= p; ++i)
      alpha_h1(j * p + i - 1) =
          ((i + j) % 2 == 0 ? 0.09 : -0.04) / (1 << ((i - 1) + (j - 1)));
  for (int guard = 0; guard < 40; ++guard) {
    if (!simulate_tvar(alpha_h1, basis_true, p, 0.0, 0).unstable) break;
    alpha_h1.tail(p * q_true) *= 0.5;
  }
  Eigen::VectorXd alpha_h0 = Eigen::VectorXd::Zero(p * (q_true + 1));
  alpha_h0.head(p) = default_stable_ar(p);

  const auto basis_fit = make_basis(BasisKind::Legendre, q_true, n);
  const auto window = hamming_window(n);
  const int p_fit = p + 1;

  struct TrialStats {
    double cov, rect, ham;
  };
  std::vector<TrialStats> h0(trials), h1(trials);
  for_each_trial(trials, threads, [&](int t) {
    for (int hyp = 0; hyp < 2; ++hyp) {
      const std::uint64_t trial_seed = derive_seed(seed, 2, hyp, t);
      try {
        auto sim = simulate_tvar(hyp == 0 ? alpha_h0 : alpha_h1, basis_true,
                                 p, 1.0, trial_seed);
        TrialStats s;
        s.cov = glrt_statistic(sim.samples, p_fit, basis_fit).statistic;
        s.rect =
            glrt_statistic_autocorrelation(sim.samples, p_fit, basis_fit)
                .statistic;
        s.ham = glrt_statistic_autocorrelation(sim.samples, p_fit, basis_fit,
                                               &window)
                    .statistic;
        (hyp == 0 ? h0 : h1)[t] = s;
      } catch (const std::exception& e) {
        rethrow_as_scenario_error(trial_seed, e);
      }
    }
  });

  auto collect = [&](const std::vector<TrialStats>& v,
                     double TrialStats::*field) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].*field;
    return out;
  };
  WindowingStudy study;
  study.h0_stats_rect = collect(h0, &TrialStats::rect);
  study.h0_stats_hamming = collect(h0, &TrialStats::ham);
  study.covariance = make_roc(collect(h0, &TrialStats::cov),
                              collect(h1, &TrialStats::cov));
  study.autocorr_rect =
      make_roc(study.h0_stats_rect, collect(h1, &TrialStats::rect));
  study.autocorr_hamming =
      make_roc(study.h0_stats_hamming, collect(h1, &TrialStats::ham));
  for (auto* curve : {&study.covariance, &study.autocorr_rect,
                      &study.autocorr_hamming}) {
    curve->seed = seed;
  }
  study.covariance.scenario = "windowing study: covariance method";
  study.autocorr_rect.scenario =
      "windowing study: autocorrelation, rectangular window";
  study.autocorr_hamming.scenario =
      "windowing study: autocorrelation, Hamming window";
  return study;
}

}  // namespace tvar

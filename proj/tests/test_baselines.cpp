#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tvar/baselines.hpp"
#include "tvar/basis.hpp"
#include "tvar/errors.hpp"
#include "tvar/estimation.hpp"
#include "tvar/rng.hpp"
#include "tvar/synth.hpp"

using tvar::BasisKind;

namespace {

Eigen::VectorXd ar_signal(const Eigen::VectorXd& a, int n, double sigma,
                          std::uint64_t seed) {
  tvar::Rng rng(seed);
  const int p = static_cast<int>(a.size());
  Eigen::VectorXd x(n);
  for (int t = 0; t < n; ++t) {
    double v = sigma * rng.normal();
    for (int i = 1; i <= p; ++i)
      if (t - i >= 0) v += a(i - 1) * x(t - i);
    x(t) = v;
  }
  return x;
}

// Resonator with a frequency step at the given sample.
Eigen::VectorXd jump_signal(int n, double delta, int change_at,
                            std::uint64_t seed) {
  tvar::ResonatorSpec spec;
  spec.n_samples = n;
  spec.sample_rate = 16000.0;
  spec.center_freq = tvar::step_trajectory(n, std::numbers::pi / 4.0,
                                           std::numbers::pi / 4.0 + delta,
                                           change_at);
  spec.bandwidth_hz = tvar::constant_trajectory(n, 100.0);
  spec.gain = 1.0;
  spec.seed = seed;
  return tvar::resonator_signal(spec);
}

}  // namespace

TEST_CASE("split statistic equals the three-fit expression") {
  const int n = 120, p = 2, r = 50;
  auto x = ar_signal(tvar::default_stable_ar(2), n, 1.0, 3);
  auto b_all = tvar::make_basis(BasisKind::Legendre, 0, n);
  auto b_l = tvar::make_basis(BasisKind::Legendre, 0, r);
  auto b_r = tvar::make_basis(BasisKind::Legendre, 0, n - r);
  auto f_all = tvar::fit_covariance(x, p, b_all);
  auto f_l = tvar::fit_covariance(x.head(r), p, b_l);
  auto f_r = tvar::fit_covariance(x.tail(n - r), p, b_r);
  const double want = (n - p) * std::log(f_all.sigma2) -
                      (r - p) * std::log(f_l.sigma2) -
                      (n - r - p) * std::log(f_r.sigma2);
  CHECK(tvar::brandt_statistic_at(x, p, r) ==
        doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("null split statistic is small: median under twice the parameter count") {
  const int n = 200, p = 2, r = 100;
  std::vector<double> vals;
  for (int s = 0; s < 500; ++s)
    vals.push_back(
        tvar::brandt_statistic_at(ar_signal(tvar::default_stable_ar(2), n, 1.0,
                                            7000 + s),
                                  p, r));
  std::nth_element(vals.begin(), vals.begin() + 250, vals.end());
  CHECK(vals[250] < 2.0 * (2 * p));
}

TEST_CASE("an abrupt change is scored highest near the true split") {
  const int n = 240, p = 2;
  const int change = 120;
  int wins = 0;
  for (int s = 0; s < 500; ++s) {
    auto x = jump_signal(n, 7.0 * std::numbers::pi / 80.0, change, 100 + s);
    const double at_true = tvar::brandt_statistic_at(x, p, change);
    const double left = tvar::brandt_statistic_at(x, p, change - n / 4);
    const double right = tvar::brandt_statistic_at(x, p, change + n / 4);
    if (at_true > left && at_true > right) ++wins;
  }
  CHECK(wins >= 450);
}

TEST_CASE("profile covers every split admitting proper fits on both sides") {
  const int n = 100, p = 2;
  auto x = ar_signal(tvar::default_stable_ar(2), n, 1.0, 9);
  auto res = tvar::brandt_statistic(x, p);
  // Both sides need p+1 residuals: r in [2p+1, n-2p-1].
  CHECK(res.r_min == 2 * p + 1);
  CHECK(static_cast<int>(res.profile.size()) == n - 4 * p - 1);
  CHECK(res.argmax_r >= 2 * p);
  CHECK(res.argmax_r < n - 2 * p);
  const double maxv =
      *std::max_element(res.profile.begin(), res.profile.end());
  CHECK(res.statistic == doctest::Approx(maxv));
  CHECK(res.statistic ==
        doctest::Approx(res.profile[res.argmax_r - res.r_min]));
  CHECK(res.statistic >= -1e-8);
}

TEST_CASE("white-noise profiles are flat: max/median ratio stays moderate") {
  const int n = 200, p = 2;
  std::vector<double> ratios;
  for (int s = 0; s < 50; ++s) {
    tvar::Rng rng(300 + s);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = rng.normal();
    auto res = tvar::brandt_statistic(x, p);
    std::vector<double> prof = res.profile;
    std::nth_element(prof.begin(), prof.begin() + prof.size() / 2, prof.end());
    ratios.push_back(res.statistic / prof[prof.size() / 2]);
  }
  std::nth_element(ratios.begin(), ratios.begin() + 25, ratios.end());
  // The profile max behaves like the extreme of ~n dependent
  // chi-squared values, so a ratio near 6 is expected on pure noise;
  // a blow-up at the admissible-range edges would be far larger.
  CHECK(ratios[25] < 8.0);
}

TEST_CASE("identical deterministic recursions on both sides carry no evidence") {
  // One noiseless AR(1) run; each side of any split follows the same
  // recursion.  Every fit is exact (zero residual), so the statistic is
  // defined as zero rather than a 0/0 log ratio.
  const int n = 120, p = 1;
  Eigen::VectorXd x(n);
  x(0) = 1.0;
  for (int t = 1; t < n; ++t) x(t) = 0.95 * x(t - 1);
  CHECK(tvar::brandt_statistic_at(x, p, n / 2) ==
        doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("argument validation for split statistics") {
  const int n = 40, p = 2;
  auto x = ar_signal(tvar::default_stable_ar(2), n, 1.0, 4);
  CHECK_THROWS_AS(tvar::brandt_statistic_at(x, p, 2 * p),
                  tvar::InsufficientDataError);
  CHECK_THROWS_AS(tvar::brandt_statistic_at(x, p, n - 2 * p),
                  tvar::InsufficientDataError);
  CHECK_NOTHROW(tvar::brandt_statistic_at(x, p, 2 * p + 1));
  CHECK_NOTHROW(tvar::brandt_statistic_at(x, p, n - 2 * p - 1));
  // Whole record too short for any admissible split.
  auto tiny = ar_signal(tvar::default_stable_ar(2), 4 * p + 1, 1.0, 5);
  CHECK_THROWS_AS(tvar::brandt_statistic(tiny, p),
                  tvar::InsufficientDataError);
}

TEST_CASE("normalized residual energy lies in the unit interval") {
  for (int s = 0; s < 100; ++s) {
    auto x = ar_signal(tvar::default_stable_ar(2), 50, 1.0, 800 + s);
    const double eta = tvar::wmg_eta(x, 4);
    CHECK(eta >= 0.0);
    CHECK(eta <= 1.0);
  }
}

TEST_CASE("predictable windows score near zero; noiselike windows score high") {
  // Strongly resonant stationary signal: tiny normalized residual.
  auto good = ar_signal(tvar::default_stable_ar(2), 400, 1.0, 12);
  CHECK(tvar::wmg_eta(good, 2) < 0.1);

  // White noise has no linear structure: eta near the raw energy ratio.
  tvar::Rng rng(13);
  Eigen::VectorXd noise(400);
  for (int i = 0; i < 400; ++i) noise(i) = rng.normal();
  CHECK(tvar::wmg_eta(noise, 2) > 0.5);

  // Noiseless AR window is perfectly predictable.
  Eigen::VectorXd det(50);
  det(0) = 1.0;
  for (int t = 1; t < 50; ++t) det(t) = 0.9 * det(t - 1);
  CHECK(tvar::wmg_eta(det, 1) <= 1e-18);
}

TEST_CASE("zero-energy windows are rejected") {
  Eigen::VectorXd zeros = Eigen::VectorXd::Zero(50);
  CHECK_THROWS_AS(tvar::wmg_eta(zeros, 2), tvar::ZeroEnergyError);
}

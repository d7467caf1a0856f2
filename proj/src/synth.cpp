#include "tvar/synth.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "tvar/errors.hpp"
#include "tvar/rng.hpp"

namespace tvar {

namespace {

// Largest root modulus of z^p - a1 z^{p-1} - ... - ap.
double max_root_modulus(const Eigen::VectorXd& a) {
  const int p = static_cast<int>(a.size());
  if (p == 1) return std::abs(a(0));
  if (p == 2) {
    const double disc = a(0) * a(0) + 4.0 * a(1);
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      return std::max(std::abs((a(0) + s) / 2.0), std::abs((a(0) - s) / 2.0));
    }
    return std::sqrt(-a(1));
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  companion.row(0) = a.transpose();
  companion.block(1, 0, p - 1, p - 1).setIdentity();
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

void check_track(const Eigen::VectorXd& freq_rad,
                 const Eigen::VectorXd& bandwidth_hz, int n) {
  if (freq_rad.size() != n || bandwidth_hz.size() != n)
    throw DimensionMismatchError(
        "resonator: trajectory lengths must match the sample count");
  for (int i = 0; i < n; ++i) {
    if (!(freq_rad(i) > 0.0 && freq_rad(i) < std::numbers::pi))
      throw InvalidArgumentError(
          "resonator: center frequency must lie in (0, pi) rad/sample");
    if (!(bandwidth_hz(i) > 0.0))
      throw InvalidArgumentError("resonator: bandwidth must be positive");
  }
}

}  // namespace

Eigen::VectorXd resonator_signal(const ResonatorSpec& spec) {
  if (spec.n_samples <= 0)
    throw InvalidArgumentError("resonator: need at least one sample");
  if (spec.burn_in < 0)
    throw InvalidArgumentError("resonator: burn-in must be >= 0");
  if (!(spec.sample_rate > 0.0))
    throw InvalidArgumentError("resonator: sample rate must be positive");
  check_track(spec.center_freq, spec.bandwidth_hz, spec.n_samples);

  Rng rng(spec.seed);
  Eigen::VectorXd x(spec.n_samples);
  double x1 = 0.0, x2 = 0.0;
  const int total = spec.burn_in + spec.n_samples;
  for (int t = 0; t < total; ++t) {
    const int i = t < spec.burn_in ? 0 : t - spec.burn_in;
    const double rho =
        std::exp(-std::numbers::pi * spec.bandwidth_hz(i) / spec.sample_rate);
    const double v = 2.0 * rho * std::cos(spec.center_freq(i)) * x1 -
                     rho * rho * x2 + spec.gain * rng.normal();
    if (t >= spec.burn_in) x(t - spec.burn_in) = v;
    x2 = x1;
    x1 = v;
  }
  return x;
}

Eigen::VectorXd constant_trajectory(int n, double value) {
  if (n < 0) throw InvalidArgumentError("trajectory: need n >= 0");
  return Eigen::VectorXd::Constant(n, value);
}

Eigen::VectorXd step_trajectory(int n, double before, double after,
                                int change_index) {
  if (n < 0) throw InvalidArgumentError("trajectory: need n >= 0");
  Eigen::VectorXd t(n);
  for (int i = 0; i < n; ++i) t(i) = i < change_index ? before : after;
  return t;
}

Eigen::VectorXd linear_trajectory(int n, double start, double end) {
  if (n < 0) throw InvalidArgumentError("trajectory: need n >= 0");
  Eigen::VectorXd t(n);
  if (n == 1) {
    t(0) = start;
    return t;
  }
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    t(i) = start * (1.0 - u) + end * u;
  }
  return t;
}

TvarSimulation simulate_tvar(const Eigen::VectorXd& alpha,
                             const BasisSet& basis, int p, double sigma,
                             std::uint64_t seed,
                             const Eigen::VectorXd& initial_state) {
  if (sigma < 0.0)
    throw InvalidArgumentError("simulate: sigma must be >= 0");
  if (initial_state.size() > p)
    throw DimensionMismatchError("simulate: initial state longer than p");
  Eigen::MatrixXd traj = eval_trajectories(alpha, basis, p);
  const int n = basis.length;

  TvarSimulation sim;
  for (int t = 0; t < n && !sim.unstable; ++t) {
    if (t > 0 && (traj.row(t).array() == traj.row(t - 1).array()).all())
      continue;
    if (max_root_modulus(traj.row(t).transpose()) >= 1.0) sim.unstable = true;
  }

  Rng rng(seed);
  sim.samples.resize(n);
  auto lag = [&](int t) {
    if (t >= 0) return sim.samples(t);
    const int k = -t;  // x[-k] from the injected state
    return k <= initial_state.size() ? initial_state(k - 1) : 0.0;
  };
  for (int t = 0; t < n; ++t) {
    double v = sigma * rng.normal();
    for (int i = 1; i <= p; ++i) v += traj(t, i - 1) * lag(t - i);
    sim.samples(t) = v;
  }
  return sim;
}

Eigen::VectorXd formant_speech(const std::vector<FormantTrack>& formants,
                               const Excitation& excitation,
                               double sample_rate, int n_samples,
                               std::uint64_t seed, double gain) {
  if (n_samples <= 0)
    throw InvalidArgumentError("speech: need at least one sample");
  if (!(sample_rate > 0.0))
    throw InvalidArgumentError("speech: sample rate must be positive");
  if (formants.empty())
    throw InvalidArgumentError("speech: need at least one formant");

  Eigen::VectorXd signal(n_samples);
  if (excitation.kind == Excitation::Kind::WhiteNoise) {
    Rng rng(seed);
    for (int t = 0; t < n_samples; ++t) signal(t) = gain * rng.normal();
  } else {
    if (!(excitation.f0 > 0.0))
      throw InvalidArgumentError("speech: impulse train needs f0 > 0");
    const long period = std::lround(sample_rate / excitation.f0);
    if (period < 1)
      throw InvalidArgumentError("speech: f0 too high for the sample rate");
    for (int t = 0; t < n_samples; ++t)
      signal(t) = (t % period == 0) ? gain : 0.0;
  }

  for (const auto& track : formants) {
    if (track.freq_hz.size() != n_samples ||
        track.bandwidth_hz.size() != n_samples)
      throw DimensionMismatchError(
          "speech: formant track lengths must match the sample count");
    double y1 = 0.0, y2 = 0.0;
    for (int t = 0; t < n_samples; ++t) {
      const double omega =
          2.0 * std::numbers::pi * track.freq_hz(t) / sample_rate;
      if (!(omega > 0.0 && omega < std::numbers::pi))
        throw InvalidArgumentError(
            "speech: formant frequency must lie in (0, fs/2)");
      if (!(track.bandwidth_hz(t) > 0.0))
        throw InvalidArgumentError("speech: bandwidth must be positive");
      const double rho = std::exp(-std::numbers::pi * track.bandwidth_hz(t) /
                                  sample_rate);
      const double v =
          2.0 * rho * std::cos(omega) * y1 - rho * rho * y2 + signal(t);
      signal(t) = v;
      y2 = y1;
      y1 = v;
    }
  }
  return signal;
}

Eigen::VectorXd default_stable_ar(int p) {
  if (p < 1) throw InvalidArgumentError("default model: p must be >= 1");
  const double rho = std::exp(-std::numbers::pi * 100.0 / 16000.0);
  if (p == 1) {
    Eigen::VectorXd a(1);
    a << 0.5;
    return a;
  }
  if (p == 2) {
    Eigen::VectorXd a(2);
    a << 2.0 * rho * std::cos(std::numbers::pi / 4.0), -rho * rho;
    return a;
  }
  // Multiply out conjugate pairs at radius 0.7 (plus a real pole at 0.5
  // for odd p) into monic polynomial coefficients.
  std::vector<double> poly{1.0};
  auto convolve = [&](const std::vector<double>& f) {
    std::vector<double> out(poly.size() + f.size() - 1, 0.0);
    for (size_t i = 0; i < poly.size(); ++i)
      for (size_t j = 0; j < f.size(); ++j) out[i + j] += poly[i] * f[j];
    poly = out;
  };
  const int pairs = p / 2;
  for (int k = 1; k <= pairs; ++k) {
    const double angle = std::numbers::pi * k / (pairs + 1);
    convolve({1.0, -2.0 * 0.7 * std::cos(angle), 0.49});
  }
  if (p % 2 == 1) convolve({1.0, -0.5});
  Eigen::VectorXd a(p);
  for (int i = 1; i <= p; ++i) a(i - 1) = -poly[i];
  return a;
}

}  // namespace tvar

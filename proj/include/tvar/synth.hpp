#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tvar/basis.hpp"

namespace tvar {

// Second-order all-pole resonator with per-sample center frequency
// (rad/sample, in (0, pi)) and bandwidth (Hz, > 0).  Pole radius is
// rho[n] = exp(-pi * bandwidth[n] / sample_rate).
struct ResonatorSpec {
  int n_samples = 0;
  double sample_rate = 16000.0;
  Eigen::VectorXd center_freq;   // omega[n], length n_samples
  Eigen::VectorXd bandwidth_hz;  // B[n], length n_samples
  double gain = 1.0;             // innovation scale (0 allowed)
  std::uint64_t seed = 0;
  int burn_in = 0;  // extra leading samples generated then discarded
};

// x[n] = 2 rho[n] cos(omega[n]) x[n-1] - rho[n]^2 x[n-2] + gain*w[n]
// from zero initial conditions with seeded Gaussian w.
Eigen::VectorXd resonator_signal(const ResonatorSpec& spec);

// Trajectory helpers for building specs.
Eigen::VectorXd constant_trajectory(int n, double value);
Eigen::VectorXd step_trajectory(int n, double before, double after,
                                int change_index);
Eigen::VectorXd linear_trajectory(int n, double start, double end);

struct TvarSimulation {
  Eigen::VectorXd samples;
  // Set when any frozen-time AR polynomial along the trajectory had a
  // root with modulus >= 1.  Informational; the recursion still runs.
  bool unstable = false;
};

// Drive the time-varying AR recursion defined by canonical coefficients
// alpha over the given basis with innovation scale sigma.  Initial
// state supplies x[-1], x[-2], ... (zeros when empty).
TvarSimulation simulate_tvar(const Eigen::VectorXd& alpha,
                             const BasisSet& basis, int p, double sigma,
                             std::uint64_t seed,
                             const Eigen::VectorXd& initial_state =
                                 Eigen::VectorXd());

// One formant: per-sample center frequency (Hz) and bandwidth (Hz).
struct FormantTrack {
  Eigen::VectorXd freq_hz;
  Eigen::VectorXd bandwidth_hz;
};

struct Excitation {
  enum class Kind { WhiteNoise, ImpulseTrain };
  Kind kind = Kind::WhiteNoise;
  double f0 = 0.0;  // impulse-train fundamental (Hz)

  static Excitation white_noise() { return {Kind::WhiteNoise, 0.0}; }
  static Excitation impulse_train(double f0) {
    return {Kind::ImpulseTrain, f0};
  }
};

// Cascade of resonator sections driven by white noise or by a periodic
// unit-impulse train with period round(sample_rate / f0).  gain scales
// the excitation.  A single white-noise formant reproduces
// resonator_signal exactly (same seed, omega = 2 pi f / sample_rate).
Eigen::VectorXd formant_speech(const std::vector<FormantTrack>& formants,
                               const Excitation& excitation,
                               double sample_rate, int n_samples,
                               std::uint64_t seed, double gain = 1.0);

// Fixed stable AR(p) coefficients for null-hypothesis draws: conjugate
// pole pairs at radius 0.7 spread over (0, pi), plus a real pole at 0.5
// when p is odd.  p = 2 uses the reference resonator (omega = pi/4,
// 100 Hz bandwidth at 16 kHz) so null calibration matches the detection
// scenarios.
Eigen::VectorXd default_stable_ar(int p);

}  // namespace tvar

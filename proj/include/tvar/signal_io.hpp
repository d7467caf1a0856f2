#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Dense>

namespace tvar {

// Signal loaded from disk; sample_rate is 0 when the container does not
// carry one (CSV).
struct SignalFile {
  Eigen::VectorXd samples;
  double sample_rate = 0.0;
};

// CSV signal files: one sample per line, '#' comment lines ignored.
// sample_rate is 0 (CSV carries none).
SignalFile read_csv_signal(const std::filesystem::path& path);
void write_csv_signal(const std::filesystem::path& path,
                      const Eigen::VectorXd& samples,
                      const std::string& comment);

// 16-bit PCM mono WAV.  Samples are normalized to [-1, 1) by 1/32768 on
// read; writing clamps and rounds.  Other WAV flavors are rejected.
SignalFile read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path,
               const Eigen::VectorXd& samples, double sample_rate);

// Dispatch on extension: .wav or .csv (anything else is an error).
SignalFile read_signal(const std::filesystem::path& path);

// Integer-factor decimation behind a linear-phase windowed-sinc FIR
// low-pass (63 taps, cutoff at 0.45 of the post-decimation Nyquist).
Eigen::VectorXd decimate(const Eigen::VectorXd& x, int factor);

}  // namespace tvar

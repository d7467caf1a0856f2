// Command-line front end: synthesis, single-window hypothesis testing,
// sequential detection, and Monte-Carlo evaluation.  Every stochastic
// command takes a mandatory --seed and writes byte-reproducible output;
// CSV outputs start with a comment line carrying the tool version, the
// scenario flags, and the seed.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvar/basis.hpp"
#include "tvar/detectors.hpp"
#include "tvar/errors.hpp"
#include "tvar/eval.hpp"
#include "tvar/glrt.hpp"
#include "tvar/rng.hpp"
#include "tvar/signal_io.hpp"
#include "tvar/synth.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

// Accepts "7pi/80", "pi/4", "2pi", or a plain decimal radian value.
double parse_angle(const std::string& text) {
  const auto at = text.find("pi");
  const char* begin = text.c_str();
  char* end = nullptr;
  if (at == std::string::npos) {
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
      throw tvar::InvalidArgumentError("bad angle: " + text);
    return v;
  }
  double numerator = 1.0;
  if (at > 0) {
    numerator = std::strtod(begin, &end);
    if (end != begin + at)
      throw tvar::InvalidArgumentError("bad angle: " + text);
  }
  double denominator = 1.0;
  if (at + 2 < text.size()) {
    if (text[at + 2] != '/')
      throw tvar::InvalidArgumentError("bad angle: " + text);
    const char* dbegin = begin + at + 3;
    denominator = std::strtod(dbegin, &end);
    if (end == dbegin || *end != '\0' || denominator == 0.0)
      throw tvar::InvalidArgumentError("bad angle: " + text);
  }
  return numerator * std::numbers::pi / denominator;
}

std::string format_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// First-line comment for CSV outputs.  Echoes the scenario flags only:
// --out and --threads never change the numbers, and keeping them out
// makes reruns into different files byte-comparable.
std::string comment_line(const std::string& flag_echo, std::uint64_t seed) {
  return std::string("tvar version=") + kVersion + " " + flag_echo +
         " seed=" + std::to_string(seed);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out.good()) throw tvar::IoError("cannot write " + path);
  return out;
}

struct FormantFlag {
  double freq_hz = 0.0;
  double bandwidth_hz = 0.0;
};

// "800:100,1220:80" -> per-formant (frequency, bandwidth) pairs.
std::vector<FormantFlag> parse_formants(const std::string& text) {
  std::vector<FormantFlag> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw tvar::InvalidArgumentError("bad formant spec: " + item);
    char* end = nullptr;
    FormantFlag f;
    f.freq_hz = std::strtod(item.c_str(), &end);
    if (end != item.c_str() + colon)
      throw tvar::InvalidArgumentError("bad formant spec: " + item);
    const char* bbegin = item.c_str() + colon + 1;
    f.bandwidth_hz = std::strtod(bbegin, &end);
    if (end == bbegin || *end != '\0')
      throw tvar::InvalidArgumentError("bad formant spec: " + item);
    if (!(f.freq_hz > 0.0) || !(f.bandwidth_hz > 0.0))
      throw tvar::InvalidArgumentError("bad formant spec: " + item);
    out.push_back(f);
    pos = comma + 1;
  }
  if (out.empty())
    throw tvar::InvalidArgumentError("empty formant list");
  return out;
}

std::vector<std::int64_t> read_anchor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw tvar::IoError("cannot open " + path);
  std::vector<std::int64_t> anchors;
  std::string line;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    // Accept both a bare index list and the marker CSV written by
    // `detect`: take the first field, tolerating one header row.
    char* end = nullptr;
    const long long v = std::strtoll(line.c_str(), &end, 10);
    if (end == line.c_str() || (*end != '\0' && *end != ',')) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw tvar::IoError("bad anchor line in " + path + ": " + line);
    }
    header_allowed = false;
    anchors.push_back(v);
  }
  if (anchors.empty())
    throw tvar::InvalidArgumentError("anchor file is empty: " + path);
  return anchors;
}

tvar::BasisKind parse_basis(const std::string& name) {
  if (name == "legendre") return tvar::BasisKind::Legendre;
  if (name == "fourier") return tvar::BasisKind::Fourier;
  throw tvar::InvalidArgumentError("unknown basis: " + name);
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  bool resonator = false;
  bool speech = false;
  int n = 0;
  double fs = 16000.0;
  std::string omega0 = "pi/4";
  std::string jump;
  double bandwidth = 100.0;
  double gain = 1.0;
  double f0 = 0.0;
  std::string formants;
  double noise = 0.0;
  int downsample = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int run_synth(const SynthArgs& a) {
  if (a.resonator == a.speech)
    throw tvar::InvalidArgumentError(
        "synth: pass exactly one of --resonator / --speech");

  std::string echo = "synth";
  Eigen::VectorXd x;
  nlohmann::json meta;
  meta["version"] = kVersion;
  meta["command"] = "synth";
  meta["n"] = a.n;
  meta["fs"] = a.fs;
  meta["seed"] = a.seed;

  if (a.resonator) {
    const double omega0 = parse_angle(a.omega0);
    const double delta = a.jump.empty() ? 0.0 : parse_angle(a.jump);
    tvar::ResonatorSpec spec;
    spec.n_samples = a.n;
    spec.sample_rate = a.fs;
    spec.center_freq =
        a.jump.empty()
            ? tvar::constant_trajectory(a.n, omega0)
            : tvar::step_trajectory(a.n, omega0, omega0 + delta, a.n / 2);
    spec.bandwidth_hz = tvar::constant_trajectory(a.n, a.bandwidth);
    spec.gain = a.gain;
    spec.seed = a.seed;
    x = tvar::resonator_signal(spec);

    echo += " --resonator --n " + std::to_string(a.n) + " --fs " +
            format_num(a.fs) + " --omega0 " + a.omega0;
    if (!a.jump.empty()) echo += " --jump " + a.jump;
    echo += " --bandwidth " + format_num(a.bandwidth) + " --gain " +
            format_num(a.gain);
    meta["mode"] = "resonator";
    meta["omega0_rad"] = omega0;
    meta["jump_rad"] = delta;
    meta["bandwidth_hz"] = a.bandwidth;
    meta["gain"] = a.gain;
  } else {
    if (a.formants.empty())
      throw tvar::InvalidArgumentError("synth --speech needs --formants");
    const auto flags = parse_formants(a.formants);
    std::vector<tvar::FormantTrack> tracks;
    for (const auto& f : flags) {
      tvar::FormantTrack track;
      track.freq_hz = tvar::constant_trajectory(a.n, f.freq_hz);
      track.bandwidth_hz = tvar::constant_trajectory(a.n, f.bandwidth_hz);
      tracks.push_back(std::move(track));
    }
    const auto excitation = a.f0 > 0.0
                                ? tvar::Excitation::impulse_train(a.f0)
                                : tvar::Excitation::white_noise();
    x = tvar::formant_speech(tracks, excitation, a.fs, a.n, a.seed, a.gain);
    if (a.noise > 0.0) {
      tvar::Rng rng(tvar::derive_seed(a.seed, 3, 0, 0));
      for (int i = 0; i < x.size(); ++i) x(i) += a.noise * rng.normal();
    }
    // Headroom for the 16-bit container: impulse-train responses can
    // exceed unity, so scale the peak to 0.9.
    const double peak = x.cwiseAbs().maxCoeff();
    if (peak > 0.0) x *= 0.9 / peak;

    echo += " --speech --n " + std::to_string(a.n) + " --fs " +
            format_num(a.fs);
    if (a.f0 > 0.0) echo += " --f0 " + format_num(a.f0);
    echo += " --formants " + a.formants + " --noise " + format_num(a.noise) +
            " --gain " + format_num(a.gain);
    meta["mode"] = "speech";
    meta["f0"] = a.f0;
    meta["formants"] = a.formants;
    meta["noise"] = a.noise;
    meta["gain"] = a.gain;
  }

  double fs_out = a.fs;
  if (a.downsample > 1) {
    x = tvar::decimate(x, a.downsample);
    fs_out /= a.downsample;
    echo += " --downsample " + std::to_string(a.downsample);
  }
  echo += " --seed " + std::to_string(a.seed);
  meta["downsample"] = a.downsample;
  meta["sample_rate_out"] = fs_out;
  meta["samples_out"] = static_cast<std::int64_t>(x.size());
  meta["output"] = a.out;

  std::string ext;
  const auto dot = a.out.rfind('.');
  if (dot != std::string::npos) ext = a.out.substr(dot);
  if (ext == ".csv") {
    tvar::write_csv_signal(a.out, x, comment_line(echo, a.seed));
  } else if (ext == ".wav") {
    tvar::write_wav(a.out, x, fs_out);
  } else {
    throw tvar::InvalidArgumentError("synth: --out must end in .csv or .wav");
  }

  std::ofstream side(a.out + ".json");
  if (!side.good()) throw tvar::IoError("cannot write " + a.out + ".json");
  side << meta.dump(2) << "\n";
  return 0;
}

// ----------------------------------------------------------------- glrt

struct GlrtArgs {
  std::string input;
  int p = 2;
  int q = 2;
  std::string basis = "legendre";
  double cfar = 0.05;
};

int run_glrt(const GlrtArgs& a) {
  const auto file = tvar::read_signal(a.input);
  const auto basis = tvar::make_basis(parse_basis(a.basis), a.q,
                                      static_cast<int>(file.samples.size()));
  const auto res = tvar::glrt_statistic(file.samples, a.p, basis);
  const double threshold = tvar::cfar_threshold(a.p, a.q, a.cfar);
  const bool declare = res.statistic >= threshold;
  std::printf("T=%.6g dof=%d threshold=%.6g decision=%s\n", res.statistic,
              res.dof, threshold, declare ? "H1" : "H0");
  return declare ? 10 : 0;
}

// --------------------------------------------------------------- detect

struct DetectArgs {
  std::string input;
  std::string mode;
  int p = 0;           // 0 = mode default
  int q = 0;
  int window = 0;
  double cfar = 0.0;
  double fs = 0.0;     // 0 = container rate, else 16 kHz
  std::string anchors;
  int period = 0;
  std::string out;
};

int run_detect(const DetectArgs& a) {
  const auto file = tvar::read_signal(a.input);
  const Eigen::VectorXd& x = file.samples;
  const double fs =
      a.fs > 0.0 ? a.fs : (file.sample_rate > 0.0 ? file.sample_rate : 16000.0);

  tvar::DetectorConfig cfg;
  if (a.mode == "formant") {
    cfg = tvar::DetectorConfig{};
  } else if (a.mode == "goi") {
    cfg = tvar::goi_default_config();
    // The library default is a per-window level; a one-sample-stride scan
    // compounds it across ~a hundred positions, so the command line
    // defaults to a much tighter scan budget.
    cfg.cfar_rate = 0.005;
  } else if (a.mode == "gci") {
    cfg = tvar::gci_default_config();
  } else {
    throw tvar::InvalidArgumentError("detect: unknown mode " + a.mode);
  }
  cfg.sample_rate = fs;
  if (a.p > 0) cfg.p = a.p;
  if (a.q > 0) cfg.q = a.q;
  if (a.window > 0) cfg.window_samples = a.window;
  if (a.cfar > 0.0) cfg.cfar_rate = a.cfar;

  std::string echo = "detect --mode " + a.mode + " --p " +
                     std::to_string(cfg.p) + " --q " + std::to_string(cfg.q) +
                     " --window " + std::to_string(cfg.window_samples) +
                     " --fs " + format_num(fs);

  std::vector<tvar::MarkerRow> rows;
  if (a.mode == "formant") {
    echo += " --cfar " + format_num(cfg.cfar_rate);
    const auto markers = tvar::detect_formant_changes(x, cfg);
    for (const auto idx : markers.marker_indices) {
      tvar::MarkerRow row;
      row.index = idx;
      row.time_seconds = static_cast<double>(idx) / fs;
      row.statistic =
          markers.statistic_trace[idx / cfg.window_samples - 1];
      row.threshold = markers.threshold;
      row.event_type = "change";
      rows.push_back(row);
    }
  } else if (a.mode == "goi") {
    echo += " --cfar " + format_num(cfg.cfar_rate);
    if (a.anchors.empty())
      throw tvar::InvalidArgumentError("detect --mode goi needs --gci-anchors");
    const auto anchors = read_anchor_file(a.anchors);
    for (std::size_t k = 0; k < anchors.size(); ++k) {
      const std::int64_t g1 = anchors[k];
      const std::int64_t g2 =
          k + 1 < anchors.size() ? anchors[k + 1] : x.size();
      const auto res = tvar::detect_goi(x, g1, g2, cfg);
      tvar::MarkerRow row;
      row.index = res.detected ? res.index : -1;
      row.time_seconds = static_cast<double>(row.index) / fs;
      row.statistic = res.statistic;
      row.threshold = tvar::cfar_threshold(cfg.p, cfg.q, cfg.cfar_rate);
      row.event_type = res.detected ? "goi" : "miss";
      rows.push_back(row);
    }
  } else {
    if (a.period <= 0)
      throw tvar::InvalidArgumentError("detect --mode gci needs --period");
    echo += " --period " + std::to_string(a.period);
    const std::int64_t period = a.period;
    const std::int64_t half = period / 2;
    const auto basis = tvar::make_basis(cfg.basis_kind, cfg.q,
                                        cfg.window_samples);
    for (std::int64_t k = 1; k * period + half <= x.size(); ++k) {
      const std::int64_t idx =
          tvar::detect_gci(x, cfg, k * period - half, k * period + half);
      tvar::MarkerRow row;
      row.index = idx;
      row.time_seconds = static_cast<double>(idx) / fs;
      const std::int64_t left = idx - cfg.window_samples / 2;
      row.statistic =
          tvar::glrt_statistic(x.segment(left, cfg.window_samples), cfg.p,
                               basis)
              .statistic;
      row.threshold = 0.0;  // argmax rule, no threshold involved
      row.event_type = "gci";
      rows.push_back(row);
    }
  }

  auto out = open_output(a.out);
  tvar::write_marker_csv(out, rows, comment_line(echo, 0));
  bool fired = false;
  for (const auto& row : rows) fired = fired || row.event_type != "miss";
  return fired ? 10 : 0;
}

// ------------------------------------------------------- roc / calibrate

struct RocArgs {
  std::string delta;
  int n = 0;
  int p = 2;
  int q = 4;
  int trials = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  bool fig2_grid = false;
  std::string out;
};

int run_roc(const RocArgs& a) {
  auto out = open_output(a.out);
  if (a.fig2_grid) {
    const std::string echo =
        "roc --fig2-grid --trials " + std::to_string(a.trials) + " --seed " +
        std::to_string(a.seed);
    out << "# " << comment_line(echo, a.seed) << "\n";
    out << "delta,n,false_alarm,detection\n";
    const double base = std::numbers::pi / 80.0;
    for (const int mult : {1, 3, 5, 7}) {
      for (const int n : {80, 240, 400, 560}) {
        const double delta = mult * base;
        const auto curve = tvar::run_roc(
            tvar::resonator_jump_scenario(0.0, n),
            tvar::resonator_jump_scenario(delta, n),
            tvar::glrt_statistic_fn(a.p, a.q), a.trials, a.seed, a.threads);
        for (const auto& [fa, det] : curve.points)
          out << format_num(delta) << "," << n << "," << format_num(fa)
              << "," << format_num(det) << "\n";
      }
    }
  } else {
    if (a.delta.empty() || a.n <= 0)
      throw tvar::InvalidArgumentError("roc: need --delta and --n");
    const double delta = parse_angle(a.delta);
    const std::string echo = "roc --delta " + a.delta + " --n " +
                             std::to_string(a.n) + " --p " +
                             std::to_string(a.p) + " --q " +
                             std::to_string(a.q) + " --trials " +
                             std::to_string(a.trials) + " --seed " +
                             std::to_string(a.seed);
    const auto curve = tvar::run_roc(
        tvar::resonator_jump_scenario(0.0, a.n),
        tvar::resonator_jump_scenario(delta, a.n),
        tvar::glrt_statistic_fn(a.p, a.q), a.trials, a.seed, a.threads);
    out << "# " << comment_line(echo, a.seed) << "\n";
    out << "false_alarm,detection\n";
    for (const auto& [fa, det] : curve.points)
      out << format_num(fa) << "," << format_num(det) << "\n";
  }
  if (!out.good()) throw tvar::IoError("failed writing " + a.out);
  return 0;
}

struct CalibrateArgs {
  int p = 0;
  int q = 0;
  int n = 0;
  double rate = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
};

int run_calibrate(const CalibrateArgs& a) {
  const auto est = tvar::empirical_false_alarm(a.p, a.q, a.n, a.rate,
                                               a.trials, a.seed, a.threads);
  const std::string echo =
      "calibrate --p " + std::to_string(a.p) + " --q " + std::to_string(a.q) +
      " --n " + std::to_string(a.n) + " --rate " + format_num(a.rate) +
      " --trials " + std::to_string(a.trials) + " --seed " +
      std::to_string(a.seed);
  auto out = open_output(a.out);
  out << "# " << comment_line(echo, a.seed) << "\n";
  out << "rate,std_error,trials\n";
  out << format_num(est.rate) << "," << format_num(est.std_error) << ","
      << est.trials << "\n";
  if (!out.good()) throw tvar::IoError("failed writing " + a.out);
  return 0;
}

struct WindowingArgs {
  int p = 0;
  int q = 0;
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
};

int run_windowing(const WindowingArgs& a) {
  const auto study =
      tvar::windowing_study(a.p, a.q, a.n, a.trials, a.seed, a.threads);
  const std::string echo =
      "windowing-study --p " + std::to_string(a.p) + " --q " +
      std::to_string(a.q) + " --n " + std::to_string(a.n) + " --trials " +
      std::to_string(a.trials) + " --seed " + std::to_string(a.seed);
  auto out = open_output(a.out);
  out << "# " << comment_line(echo, a.seed) << "\n";
  out << "metric,value\n";
  out << "covariance_auc," << format_num(tvar::auc(study.covariance)) << "\n";
  out << "autocorr_rect_auc," << format_num(tvar::auc(study.autocorr_rect))
      << "\n";
  out << "autocorr_hamming_auc,"
      << format_num(tvar::auc(study.autocorr_hamming)) << "\n";
  out << "h0_ks_rect_vs_hamming,"
      << format_num(tvar::two_sample_ks_distance(study.h0_stats_rect,
                                                 study.h0_stats_hamming))
      << "\n";
  if (!out.good()) throw tvar::IoError("failed writing " + a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-varying autoregressive analysis"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic signal");
  synth_cmd->add_flag("--resonator", synth.resonator,
                      "time-varying second-order resonator");
  synth_cmd->add_flag("--speech", synth.speech, "formant-cascade synthesizer");
  synth_cmd->add_option("--n", synth.n, "samples to generate")
      ->required()
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--fs", synth.fs, "sample rate (Hz)")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--omega0", synth.omega0,
                        "baseline center frequency (rad/sample)");
  synth_cmd->add_option("--jump", synth.jump,
                        "frequency step at the midpoint (rad/sample)");
  synth_cmd->add_option("--bandwidth", synth.bandwidth, "bandwidth (Hz)")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--gain", synth.gain, "excitation gain");
  synth_cmd->add_option("--f0", synth.f0,
                        "impulse-train fundamental (Hz); 0 = white noise");
  synth_cmd->add_option("--formants", synth.formants,
                        "comma-separated freq:bandwidth list (Hz)");
  synth_cmd->add_option("--noise", synth.noise,
                        "additive measurement noise level");
  synth_cmd->add_option("--downsample", synth.downsample,
                        "integer decimation factor")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", synth.seed, "random seed")->required();
  synth_cmd->add_option("--out", synth.out, "output .csv or .wav")->required();

  GlrtArgs glrt;
  auto* glrt_cmd =
      app.add_subcommand("glrt", "time-variation test on one window");
  glrt_cmd->add_option("input", glrt.input, "signal file")->required();
  glrt_cmd->add_option("--p", glrt.p, "AR order")->check(CLI::PositiveNumber);
  glrt_cmd->add_option("--q", glrt.q, "non-constant basis functions")
      ->check(CLI::PositiveNumber);
  glrt_cmd->add_option("--basis", glrt.basis, "legendre | fourier");
  glrt_cmd->add_option("--cfar", glrt.cfar, "false-alarm rate")
      ->check(CLI::Range(1e-12, 1.0));

  DetectArgs det;
  auto* det_cmd = app.add_subcommand("detect", "sequential event detection");
  det_cmd->add_option("input", det.input, "signal file")->required();
  det_cmd->add_option("--mode", det.mode, "formant | goi | gci")->required();
  det_cmd->add_option("--p", det.p, "AR order")->check(CLI::PositiveNumber);
  det_cmd->add_option("--q", det.q, "non-constant basis functions")
      ->check(CLI::PositiveNumber);
  det_cmd->add_option("--window", det.window, "segment / window length")
      ->check(CLI::PositiveNumber);
  det_cmd->add_option("--cfar", det.cfar, "false-alarm rate")
      ->check(CLI::Range(1e-12, 1.0));
  det_cmd->add_option("--fs", det.fs, "sample rate override (Hz)")
      ->check(CLI::PositiveNumber);
  det_cmd->add_option("--gci-anchors", det.anchors,
                      "file of anchor sample indices (goi mode)");
  det_cmd->add_option("--period", det.period, "pitch period (gci mode)")
      ->check(CLI::PositiveNumber);
  det_cmd->add_option("--out", det.out, "marker CSV")->required();

  RocArgs roc;
  auto* roc_cmd =
      app.add_subcommand("roc", "Monte-Carlo detection/false-alarm curve");
  roc_cmd->add_option("--delta", roc.delta, "frequency jump (rad/sample)");
  roc_cmd->add_option("--n", roc.n, "record length")
      ->check(CLI::PositiveNumber);
  roc_cmd->add_option("--p", roc.p, "AR order")->check(CLI::PositiveNumber);
  roc_cmd->add_option("--q", roc.q, "non-constant basis functions")
      ->check(CLI::PositiveNumber);
  roc_cmd->add_option("--trials", roc.trials, "trials per hypothesis")
      ->required()
      ->check(CLI::Range(100, 1000000000));
  roc_cmd->add_option("--seed", roc.seed, "random seed")->required();
  roc_cmd->add_option("--threads", roc.threads, "worker threads");
  roc_cmd->add_flag("--fig2-grid", roc.fig2_grid,
                    "sweep four jump sizes by four record lengths");
  roc_cmd->add_option("--out", roc.out, "output CSV")->required();

  CalibrateArgs cal;
  auto* cal_cmd =
      app.add_subcommand("calibrate", "empirical false-alarm rate check");
  cal_cmd->add_option("--p", cal.p, "AR order")
      ->required()
      ->check(CLI::PositiveNumber);
  cal_cmd->add_option("--q", cal.q, "non-constant basis functions")
      ->required()
      ->check(CLI::PositiveNumber);
  cal_cmd->add_option("--n", cal.n, "record length")
      ->required()
      ->check(CLI::PositiveNumber);
  cal_cmd->add_option("--rate", cal.rate, "design false-alarm rate")
      ->required()
      ->check(CLI::Range(1e-12, 1.0));
  cal_cmd->add_option("--trials", cal.trials, "Monte-Carlo trials")
      ->required()
      ->check(CLI::Range(500, 1000000000));
  cal_cmd->add_option("--seed", cal.seed, "random seed")->required();
  cal_cmd->add_option("--threads", cal.threads, "worker threads");
  cal_cmd->add_option("--out", cal.out, "output CSV")->required();

  WindowingArgs win;
  auto* win_cmd = app.add_subcommand(
      "windowing-study", "data-window effect on detection performance");
  win_cmd->add_option("--p", win.p, "true AR order")
      ->required()
      ->check(CLI::PositiveNumber);
  win_cmd->add_option("--q", win.q, "true basis degree under H1")
      ->required()
      ->check(CLI::PositiveNumber);
  win_cmd->add_option("--n", win.n, "record length")
      ->required()
      ->check(CLI::PositiveNumber);
  win_cmd->add_option("--trials", win.trials, "Monte-Carlo trials")
      ->required()
      ->check(CLI::Range(1000, 1000000000));
  win_cmd->add_option("--seed", win.seed, "random seed")->required();
  win_cmd->add_option("--threads", win.threads, "worker threads");
  win_cmd->add_option("--out", win.out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*synth_cmd) return run_synth(synth);
    if (*glrt_cmd) return run_glrt(glrt);
    if (*det_cmd) return run_detect(det);
    if (*roc_cmd) return run_roc(roc);
    if (*cal_cmd) return run_calibrate(cal);
    if (*win_cmd) return run_windowing(win);
  } catch (const tvar::InvalidArgumentError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const tvar::DimensionMismatchError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const tvar::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const tvar::InsufficientDataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const tvar::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}

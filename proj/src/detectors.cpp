#include "tvar/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "tvar/baselines.hpp"
#include "tvar/errors.hpp"
#include "tvar/glrt.hpp"

namespace tvar {

namespace {

void check_config(const DetectorConfig& cfg) {
  if (cfg.p < 1 || cfg.q < 1)
    throw InvalidArgumentError("detector: need p >= 1 and q >= 1");
  // The covariance-method fit needs more samples than p*(q+2).
  if (cfg.window_samples <= cfg.p * (cfg.q + 2))
    throw InvalidArgumentError(
        "detector: window too short for the model order");
  if (!(cfg.cfar_rate > 0.0 && cfg.cfar_rate < 1.0))
    throw InvalidArgumentError("detector: false-alarm rate must be in (0, 1)");
  if (!(cfg.sample_rate > 0.0))
    throw InvalidArgumentError("detector: sample rate must be positive");
}

// Statistic of one window; an exact alternative fit counts as +inf.
double window_statistic(const Eigen::VectorXd& window,
                        const DetectorConfig& cfg, const BasisSet& basis) {
  return glrt_statistic(window, cfg.p, basis).statistic;
}

}  // namespace

DetectorConfig goi_default_config(double sample_rate) {
  DetectorConfig cfg;
  cfg.window_samples = 50;
  cfg.p = 4;
  cfg.q = 1;
  cfg.cfar_rate = 0.15;
  cfg.sample_rate = sample_rate;
  return cfg;
}

DetectorConfig gci_default_config(double sample_rate) {
  DetectorConfig cfg;
  cfg.window_samples = 50;
  cfg.p = 4;
  cfg.q = 2;
  cfg.sample_rate = sample_rate;
  return cfg;
}

ChangeMarkers detect_formant_changes(const Eigen::VectorXd& x,
                                     const DetectorConfig& cfg) {
  check_config(cfg);
  const std::int64_t n0 = cfg.window_samples;
  const std::int64_t n = x.size();
  if (n < 2 * n0)
    throw InsufficientDataError("change detector: need at least two segments");
  const std::int64_t segments = n / n0;

  ChangeMarkers out;
  out.threshold = cfar_threshold(cfg.p, cfg.q, cfg.cfar_rate);
  out.segment_boundaries.reserve(segments + 1);
  for (std::int64_t k = 0; k <= segments; ++k)
    out.segment_boundaries.push_back(k * n0);
  out.statistic_trace.reserve(segments - 1);

  std::int64_t left_begin = 0;
  for (std::int64_t k = 1; k < segments; ++k) {
    const std::int64_t merged_len = (k + 1) * n0 - left_begin;
    auto basis =
        make_basis(cfg.basis_kind, cfg.q, static_cast<int>(merged_len));
    const double t = window_statistic(x.segment(left_begin, merged_len), cfg,
                                      basis);
    out.statistic_trace.push_back(t);
    if (t >= out.threshold) {
      out.marker_indices.push_back(k * n0);
      left_begin = k * n0;
    }
  }
  return out;
}

GoiResult detect_goi(const Eigen::VectorXd& x, std::int64_t g1,
                     std::int64_t g2, const DetectorConfig& cfg) {
  check_config(cfg);
  const std::int64_t n0 = cfg.window_samples;
  if (g1 < 0 || g2 > x.size() || g2 - g1 <= n0)
    throw InvalidArgumentError(
        "opening detector: interval must hold more than one window");
  auto basis = make_basis(cfg.basis_kind, cfg.q, static_cast<int>(n0));
  // cfar_rate is a per-window level: the scan tests many overlapping
  // windows, so callers should budget it well below the single-test rate
  // they would otherwise pick.
  const double threshold = cfar_threshold(cfg.p, cfg.q, cfg.cfar_rate);

  GoiResult res;
  for (std::int64_t right = g1 + n0; right < g2; ++right) {
    const double t = window_statistic(x.segment(right - n0, n0), cfg, basis);
    res.statistic = std::max(res.statistic, t);
    if (t >= threshold) {
      res.detected = true;
      res.index = right;
      res.statistic = t;
      return res;
    }
  }
  return res;
}

GoiResult detect_goi_wmg(const Eigen::VectorXd& x, std::int64_t g1,
                         std::int64_t g2, const DetectorConfig& cfg,
                         double eta_threshold) {
  check_config(cfg);
  const std::int64_t n0 = cfg.window_samples;
  if (g1 < 0 || g2 > x.size() || g2 - g1 <= n0)
    throw InvalidArgumentError(
        "opening detector: interval must hold more than one window");
  GoiResult res;
  for (std::int64_t right = g1 + n0; right < g2; ++right) {
    const double eta = wmg_eta(x.segment(right - n0, n0), cfg.p);
    res.statistic = std::max(res.statistic, eta);
    if (eta >= eta_threshold) {
      res.detected = true;
      res.index = right;
      res.statistic = eta;
      return res;
    }
  }
  return res;
}

std::int64_t detect_gci(const Eigen::VectorXd& x, const DetectorConfig& cfg,
                        std::int64_t range_begin, std::int64_t range_end) {
  check_config(cfg);
  const std::int64_t n0 = cfg.window_samples;
  const std::int64_t begin = std::max<std::int64_t>(0, range_begin);
  const std::int64_t end = std::min<std::int64_t>(x.size(), range_end);
  if (end - begin < n0)
    throw InsufficientDataError(
        "closure detector: range shorter than one window");
  auto basis = make_basis(cfg.basis_kind, cfg.q, static_cast<int>(n0));

  std::int64_t best = begin;
  double best_t = -1.0;
  for (std::int64_t left = begin; left + n0 <= end; ++left) {
    const double t = window_statistic(x.segment(left, n0), cfg, basis);
    if (t > best_t) {
      best_t = t;
      best = left;
    }
  }
  return best + n0 / 2;
}

void write_marker_csv(std::ostream& out, const std::vector<MarkerRow>& rows,
                      const std::string& comment) {
  out << "# " << comment << "\n";
  out << "index,time_seconds,statistic,threshold,event_type\n";
  char buf[160];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%lld,%.9f,%.9g,%.9g,",
                  static_cast<long long>(row.index), row.time_seconds,
                  row.statistic, row.threshold);
    out << buf << row.event_type << "\n";
  }
}

}  // namespace tvar

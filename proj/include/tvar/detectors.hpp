#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tvar/basis.hpp"

namespace tvar {

struct DetectorConfig {
  int window_samples = 50;  // short-time segment / sliding window length
  int p = 4;
  int q = 1;
  BasisKind basis_kind = BasisKind::Legendre;
  double cfar_rate = 0.05;
  double sample_rate = 16000.0;
};

// Defaults used in the reported experiments.
DetectorConfig goi_default_config(double sample_rate = 16000.0);
DetectorConfig gci_default_config(double sample_rate = 16000.0);

// Output of the sequential segment-merging change detector.
struct ChangeMarkers {
  std::vector<std::int64_t> marker_indices;      // flagged boundaries
  std::vector<std::int64_t> segment_boundaries;  // grid 0, N0, 2*N0, ...
  std::vector<double> statistic_trace;           // T at each merge step
  double threshold = 0.0;
};

// Greedy forward pass over consecutive window_samples-long segments:
// merge the accumulated left context with the next segment, evaluate
// the time-variation statistic on the merged span (basis re-sampled to
// its length), and either keep merging (T < threshold) or emit a
// change marker at the segment boundary and restart the accumulation
// from the segment that fired.  Threshold is fixed up front from the
// configured false-alarm rate.
ChangeMarkers detect_formant_changes(const Eigen::VectorXd& x,
                                     const DetectorConfig& cfg);

struct GoiResult {
  bool detected = false;
  std::int64_t index = -1;   // right edge of the firing window
  double statistic = 0.0;    // statistic at the decision point
};

// Slide a window_samples-long window one sample at a time from g1 and
// return the first right edge whose window statistic reaches the CFAR
// threshold; a miss if the right edge reaches g2 first.
GoiResult detect_goi(const Eigen::VectorXd& x, std::int64_t g1,
                     std::int64_t g2, const DetectorConfig& cfg);

// Same scan driven by the normalized stationary-AR residual energy of
// the window against a hand-tuned threshold.
GoiResult detect_goi_wmg(const Eigen::VectorXd& x, std::int64_t g1,
                         std::int64_t g2, const DetectorConfig& cfg,
                         double eta_threshold);

// Midpoint of the window position maximizing the statistic over all
// window placements inside [range_begin, range_end); ties resolve to
// the smallest index.  No threshold is involved.
std::int64_t detect_gci(const Eigen::VectorXd& x, const DetectorConfig& cfg,
                        std::int64_t range_begin, std::int64_t range_end);

// One CSV row of detector output.
struct MarkerRow {
  std::int64_t index = 0;
  double time_seconds = 0.0;
  double statistic = 0.0;
  double threshold = 0.0;
  std::string event_type;  // change | goi | gci | miss
};

// Serialize markers with a leading comment line (version/flags/seed)
// and the fixed header index,time_seconds,statistic,threshold,event_type.
void write_marker_csv(std::ostream& out, const std::vector<MarkerRow>& rows,
                      const std::string& comment);

}  // namespace tvar

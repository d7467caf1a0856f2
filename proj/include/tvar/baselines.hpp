#pragma once

#include <vector>

#include <Eigen/Dense>

namespace tvar {

// Brandt's two-model change test: compare one AR(p) fit over the whole
// window against independent fits of the two sides of a split at r.
struct BrandtResult {
  double statistic = 0.0;       // max of profile
  int argmax_r = 0;             // split index attaining the max
  int r_min = 0;                // first admissible split (profile[0])
  std::vector<double> profile;  // statistic at r = r_min, r_min+1, ...
};

// Statistic at one split index:
//   (N-p) ln s2_all - (r-p) ln s2_left - (N-r-p) ln s2_right
// with all three variances from covariance-method AR(p) fits.  Both
// sides must be long enough for a proper fit (p+1 residuals each), so
// r ranges over [2p+1, N-2p-1].
double brandt_statistic_at(const Eigen::VectorXd& x, int p, int r);

// Profile over every admissible split; ties on the max resolve to the
// smallest r.  Requires N >= 4p+2 so at least one split is admissible.
BrandtResult brandt_statistic(const Eigen::VectorXd& x, int p);

// Normalized AR(p) residual energy of one window (covariance method):
// |residual|^2 / |window|^2, in [0, 1].  Low values mean the window is
// well explained by a stationary AR(p) model.
double wmg_eta(const Eigen::VectorXd& window, int p);

}  // namespace tvar

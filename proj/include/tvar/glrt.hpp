#pragma once

#include <Eigen/Dense>

#include "tvar/basis.hpp"
#include "tvar/estimation.hpp"

namespace tvar {

// Generalized likelihood ratio test of "time-invariant AR(p)" against
// "time-varying AR(p) over the given basis" on one window.
struct GlrtResult {
  double statistic = 0.0;  // (N-p) * ln(sigma2_h0 / sigma2_h1), >= 0
  int dof = 0;             // p*q, the added coefficient count
  double sigma2_h0 = 0.0;
  double sigma2_h1 = 0.0;
  int n_effective = 0;
  // sigma2_h1 == 0 (alternative fits the window exactly): statistic is
  // +inf and this flag is set; downstream detectors treat it as a firing.
  bool perfect_alternative_fit = false;
  TvarFit fit_h0;
  TvarFit fit_h1;
};

// Covariance-method GLRT (the reference form used by the detectors).
GlrtResult glrt_statistic(const Eigen::VectorXd& x, int p,
                          const BasisSet& basis);

// Same ratio computed from autocorrelation-method fits, optionally with
// an elementwise data window; statistic scales by N instead of N-p.
GlrtResult glrt_statistic_autocorrelation(const Eigen::VectorXd& x, int p,
                                          const BasisSet& basis,
                                          const Eigen::VectorXd* window =
                                              nullptr);

// Chi-squared CDF with dof degrees of freedom (regularized lower
// incomplete gamma), absolute error <= 1e-12.
double chi2_cdf(int dof, double t);

// Inverse of chi2_cdf in its second argument (bracketed root find,
// |cdf(result) - prob| <= 1e-10).
double chi2_quantile(int dof, double prob);

// Constant-false-alarm-rate threshold: the chi-squared quantile with
// p*q degrees of freedom at probability 1 - alarm_rate.
double cfar_threshold(int p, int q, double alarm_rate);

// Autocorrelation sequence r[0..p-1] of the stationary AR(p) process
// with the given coefficients and innovation variance, from the
// Yule-Walker equations.  Throws UnstableModelError when the AR
// polynomial has a root with modulus >= 1.
Eigen::VectorXd step_down_autocorrelation(const Eigen::VectorXd& ar_coeffs,
                                          double sigma2);

// Asymptotic distribution spec of the statistic under a fixed
// alternative: noncentral chi-squared with p*q dof and the returned
// noncentrality.
struct PowerSpec {
  double lambda = 0.0;
  int dof = 0;
  Eigen::MatrixXd basis_regressors;       // basis rows p..N-1, (N-p) x (q+1)
  Eigen::MatrixXd autocorrelation;        // p x p Toeplitz R
  Eigen::MatrixXd centered_trajectories;  // full N x p trajectories minus
                                          // column means over rows p..N-1
};

// Noncentrality via the Schur complement of kron(F'F, R/sigma2) with
// respect to its leading p x p block, applied to the time-varying
// coefficient block.  alpha must describe a stable constant part.
PowerSpec noncentrality_schur(const Eigen::VectorXd& alpha, double sigma2,
                              const BasisSet& basis, int p);

// Equivalent trace form: lambda = tr(At * R * At') / sigma2 where At is
// the trajectory matrix restricted to rows p..N-1 with column means
// removed.  R must be symmetric positive definite (p x p).
double noncentrality_trace(const Eigen::MatrixXd& trajectories,
                           const Eigen::MatrixXd& r, double sigma2);

// Upper tail of the noncentral chi-squared distribution: the detection
// probability at the given threshold.  Poisson-mixture series, absolute
// error <= 1e-8.
double power(double lambda, int dof, double threshold);

}  // namespace tvar

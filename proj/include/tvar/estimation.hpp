#pragma once

#include <Eigen/Dense>

#include "tvar/basis.hpp"

namespace tvar {

enum class FitMethod { Covariance, Autocorrelation };

// Least-squares regression assembled from one signal window.
struct DesignMatrix {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd target;
};

// Fitted time-varying AR model.  alpha is in canonical block order
// (constant-basis block first, then one p-block per non-constant basis
// function); ar_block/tv_block expose the two halves.
struct TvarFit {
  int p = 0;
  int q = 0;
  Eigen::VectorXd alpha;     // length p*(q+1)
  double sigma2 = 0.0;       // residual variance estimate
  int n_effective = 0;       // residual count backing sigma2
  FitMethod method = FitMethod::Covariance;

  Eigen::VectorXd ar_block() const { return alpha.head(p); }
  Eigen::VectorXd tv_block() const { return alpha.tail(alpha.size() - p); }
};

// Reorder a lag-major coefficient vector (all basis weights of lag 1,
// then lag 2, ...) into the canonical basis-major order, and back.
Eigen::VectorXd lag_major_to_canonical(const Eigen::VectorXd& v, int p, int q);
Eigen::VectorXd canonical_to_lag_major(const Eigen::VectorXd& v, int p, int q);

// Covariance-method design: (N-p) rows, one per predicted sample
// n = p..N-1; row entries are x[n-i]*f_j[n] in lag-major column order,
// target x[p..N-1].  No zero padding; requires N > p*(q+2).
DesignMatrix build_covariance_design(const Eigen::VectorXd& x, int p,
                                     const BasisSet& basis);

// Autocorrelation-method design: the regression runs over every index
// where the zero-extended signal contributes, n = 0..N+p-1, with
// x[n] = 0 outside [0, N-1].  Row entries are f_j[n-i]*x[n-i] in
// lag-major order; the target is x zero-padded to N+p.  The Gram matrix
// of this design is block-Toeplitz with symmetric diagonal blocks.
DesignMatrix build_autocorrelation_design(const Eigen::VectorXd& x, int p,
                                          const BasisSet& basis);

// Exact least squares via SVD.  Throws RankDeficientError when the
// smallest singular value falls below 1e-10 of the largest (no silent
// regularization), InsufficientDataError when rows < columns.
Eigen::VectorXd solve_least_squares(const Eigen::MatrixXd& a,
                                    const Eigen::VectorXd& b);

// Covariance-method fit: sigma2 = |residual|^2 / (N-p).
TvarFit fit_covariance(const Eigen::VectorXd& x, int p, const BasisSet& basis);

// Autocorrelation-method fit: sigma2 = |residual|^2 / N.  When window
// is non-null it is applied to x elementwise before fitting (length N).
TvarFit fit_autocorrelation(const Eigen::VectorXd& x, int p,
                            const BasisSet& basis,
                            const Eigen::VectorXd* window = nullptr);

// Residual of a fit replayed against a signal window, using the fit's
// own sample support: n = p..N-1 for the covariance method, the
// zero-extended range n = 0..N+p-1 for the autocorrelation method.
// For a self-fit, sum(e^2) / fit.n_effective reproduces fit.sigma2.
Eigen::VectorXd prediction_error(const Eigen::VectorXd& x, const TvarFit& fit,
                                 const BasisSet& basis);

// Symmetric Hamming window of length n (0.54 - 0.46 cos term).
Eigen::VectorXd hamming_window(int n);

}  // namespace tvar

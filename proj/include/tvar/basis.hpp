#pragma once

#include <Eigen/Dense>

namespace tvar {

enum class BasisKind { Legendre, Fourier };

// Sampled basis functions f_0..f_q on a window of n samples.  Column 0
// is always the constant function, so a time-invariant AR model is the
// q = 0 special case of every basis.
struct BasisSet {
  BasisKind kind;
  int q = 0;        // number of non-constant functions
  int length = 0;   // window length the functions were sampled on
  Eigen::MatrixXd values;  // length x (q+1), column j = f_j

  int n_functions() const { return q + 1; }
};

// Legendre: P_j evaluated on t = 2n/(length-1) - 1 (endpoints included).
// Fourier: cos/sin pairs at increasing integer frequencies of
// theta = 2*pi*n/length, ordered (1, cos, sin, cos 2., sin 2., ...)
// truncated after q non-constant columns.
BasisSet make_basis(BasisKind kind, int q, int length);

// Coefficient trajectories a_i[n] = sum_j alpha_ij f_j[n].  alpha is in
// canonical block order: p time-invariant coefficients first (basis 0),
// then the p coefficients of basis 1, and so on.  Returns length x p.
Eigen::MatrixXd eval_trajectories(const Eigen::VectorXd& alpha,
                                  const BasisSet& basis, int p);

}  // namespace tvar

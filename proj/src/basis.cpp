#include "tvar/basis.hpp"

#include <cmath>
#include <numbers>

#include "tvar/errors.hpp"

namespace tvar {

BasisSet make_basis(BasisKind kind, int q, int length) {
  if (q < 0) throw InvalidArgumentError("basis: q must be >= 0");
  if (length < 2) throw InvalidArgumentError("basis: length must be >= 2");

  BasisSet basis;
  basis.kind = kind;
  basis.q = q;
  basis.length = length;
  basis.values.resize(length, q + 1);
  basis.values.col(0).setOnes();

  if (kind == BasisKind::Legendre) {
    // Three-term recurrence on t in [-1, 1] sampled at the window's
    // own grid, endpoints included.
    for (int n = 0; n < length; ++n) {
      const double t = 2.0 * n / (length - 1) - 1.0;
      double pm1 = 1.0, pm0 = t;
      for (int j = 1; j <= q; ++j) {
        basis.values(n, j) = pm0;
        const double next = ((2 * j + 1) * t * pm0 - j * pm1) / (j + 1);
        pm1 = pm0;
        pm0 = next;
      }
    }
  } else {
    const double theta = 2.0 * std::numbers::pi / length;
    for (int j = 1; j <= q; ++j) {
      const int harmonic = (j + 1) / 2;
      const bool is_cos = (j % 2 == 1);
      for (int n = 0; n < length; ++n) {
        const double arg = theta * harmonic * n;
        basis.values(n, j) = is_cos ? std::cos(arg) : std::sin(arg);
      }
    }
  }
  return basis;
}

Eigen::MatrixXd eval_trajectories(const Eigen::VectorXd& alpha,
                                  const BasisSet& basis, int p) {
  if (p < 1) throw InvalidArgumentError("trajectories: p must be >= 1");
  const int q = basis.q;
  if (alpha.size() != static_cast<Eigen::Index>(p) * (q + 1))
    throw DimensionMismatchError("trajectories: alpha must have p*(q+1) entries");
  // Column i-1 of the result is a_i[n] = sum_j alpha[j*p + i-1] f_j[n].
  Eigen::MatrixXd weights(q + 1, p);
  for (int j = 0; j <= q; ++j)
    for (int i = 0; i < p; ++i) weights(j, i) = alpha(j * p + i);
  return basis.values * weights;
}

}  // namespace tvar

#include "tvar/estimation.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "tvar/errors.hpp"

namespace tvar {

namespace {

void check_shape(const Eigen::VectorXd& x, int p, const BasisSet& basis) {
  if (p < 1) throw InvalidArgumentError("fit: p must be >= 1");
  if (basis.length != static_cast<int>(x.size()))
    throw DimensionMismatchError("fit: basis length must match signal length");
}

}  // namespace

Eigen::VectorXd lag_major_to_canonical(const Eigen::VectorXd& v, int p, int q) {
  if (v.size() != static_cast<Eigen::Index>(p) * (q + 1))
    throw DimensionMismatchError("reorder: vector must have p*(q+1) entries");
  Eigen::VectorXd out(v.size());
  for (int i = 1; i <= p; ++i)
    for (int j = 0; j <= q; ++j) out(j * p + i - 1) = v((i - 1) * (q + 1) + j);
  return out;
}

Eigen::VectorXd canonical_to_lag_major(const Eigen::VectorXd& v, int p, int q) {
  if (v.size() != static_cast<Eigen::Index>(p) * (q + 1))
    throw DimensionMismatchError("reorder: vector must have p*(q+1) entries");
  Eigen::VectorXd out(v.size());
  for (int i = 1; i <= p; ++i)
    for (int j = 0; j <= q; ++j) out((i - 1) * (q + 1) + j) = v(j * p + i - 1);
  return out;
}

DesignMatrix build_covariance_design(const Eigen::VectorXd& x, int p,
                                     const BasisSet& basis) {
  check_shape(x, p, basis);
  const int n = static_cast<int>(x.size());
  const int q = basis.q;
  if (n <= p)
    throw InsufficientDataError(
        "covariance design: need more samples than the AR order");
  DesignMatrix d;
  d.matrix.resize(n - p, p * (q + 1));
  d.target = x.segment(p, n - p);
  for (int t = p; t < n; ++t)
    for (int i = 1; i <= p; ++i)
      for (int j = 0; j <= q; ++j)
        d.matrix(t - p, (i - 1) * (q + 1) + j) = x(t - i) * basis.values(t, j);
  return d;
}

DesignMatrix build_autocorrelation_design(const Eigen::VectorXd& x, int p,
                                          const BasisSet& basis) {
  check_shape(x, p, basis);
  const int n = static_cast<int>(x.size());
  const int q = basis.q;
  DesignMatrix d;
  d.matrix.setZero(n + p, p * (q + 1));
  d.target.setZero(n + p);
  d.target.head(n) = x;
  // Regressors carry the basis evaluated at the lag time, so the Gram
  // matrix stays block-Toeplitz; terms with t-i outside the record are
  // zero by the signal's zero extension.
  for (int t = 0; t < n + p; ++t)
    for (int i = 1; i <= p; ++i) {
      const int s = t - i;
      if (s < 0 || s >= n) continue;
      for (int j = 0; j <= q; ++j)
        d.matrix(t, (i - 1) * (q + 1) + j) = basis.values(s, j) * x(s);
    }
  return d;
}

Eigen::VectorXd solve_least_squares(const Eigen::MatrixXd& a,
                                    const Eigen::VectorXd& b) {
  if (a.rows() < a.cols())
    throw InsufficientDataError("least squares: fewer rows than columns");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 1e-10 * sv(0))
    throw RankDeficientError("least squares: design is rank deficient");
  return svd.solve(b);
}

TvarFit fit_covariance(const Eigen::VectorXd& x, int p, const BasisSet& basis) {
  auto d = build_covariance_design(x, p, basis);
  Eigen::VectorXd lag = solve_least_squares(d.matrix, d.target);
  TvarFit fit;
  fit.p = p;
  fit.q = basis.q;
  fit.alpha = lag_major_to_canonical(lag, p, basis.q);
  fit.n_effective = static_cast<int>(x.size()) - p;
  fit.sigma2 = (d.target - d.matrix * lag).squaredNorm() / fit.n_effective;
  fit.method = FitMethod::Covariance;
  return fit;
}

TvarFit fit_autocorrelation(const Eigen::VectorXd& x, int p,
                            const BasisSet& basis,
                            const Eigen::VectorXd* window) {
  check_shape(x, p, basis);
  Eigen::VectorXd xw = x;
  if (window != nullptr) {
    if (window->size() != x.size())
      throw DimensionMismatchError("fit: window length must match signal");
    xw = x.cwiseProduct(*window);
  }
  auto d = build_autocorrelation_design(xw, p, basis);
  Eigen::VectorXd lag = solve_least_squares(d.matrix, d.target);
  TvarFit fit;
  fit.p = p;
  fit.q = basis.q;
  fit.alpha = lag_major_to_canonical(lag, p, basis.q);
  fit.n_effective = static_cast<int>(x.size());
  fit.sigma2 = (d.target - d.matrix * lag).squaredNorm() / fit.n_effective;
  fit.method = FitMethod::Autocorrelation;
  return fit;
}

Eigen::VectorXd prediction_error(const Eigen::VectorXd& x, const TvarFit& fit,
                                 const BasisSet& basis) {
  auto d = fit.method == FitMethod::Covariance
               ? build_covariance_design(x, fit.p, basis)
               : build_autocorrelation_design(x, fit.p, basis);
  Eigen::VectorXd lag = canonical_to_lag_major(fit.alpha, fit.p, fit.q);
  return d.target - d.matrix * lag;
}

Eigen::VectorXd hamming_window(int n) {
  if (n < 1) throw InvalidArgumentError("hamming: length must be >= 1");
  Eigen::VectorXd w(n);
  if (n == 1) {
    w(0) = 1.0;
    return w;
  }
  for (int i = 0; i < n; ++i)
    w(i) = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
  return w;
}

}  // namespace tvar

#include "tvar/glrt.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "tvar/errors.hpp"

namespace tvar {

namespace {

// Regularized lower incomplete gamma P(a, x); series for x < a+1,
// Lentz continued fraction for the upper tail otherwise.
double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  const double log_prefix = a * std::log(x) - x - std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 2000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-17) break;
    }
    return sum * std::exp(log_prefix);
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 2000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-17) break;
  }
  return 1.0 - std::exp(log_prefix) * h;
}

GlrtResult ratio_result(TvarFit fit_h0, TvarFit fit_h1, int n_effective,
                        double mean_square) {
  GlrtResult res;
  res.dof = fit_h1.p * fit_h1.q;
  res.sigma2_h0 = fit_h0.sigma2;
  res.sigma2_h1 = fit_h1.sigma2;
  res.n_effective = n_effective;
  const double tiny = 1e-24 * mean_square;
  if (res.sigma2_h1 <= tiny) {
    if (res.sigma2_h0 <= tiny) {
      res.statistic = 0.0;  // both models fit exactly: no evidence either way
    } else {
      res.statistic = std::numeric_limits<double>::infinity();
      res.perfect_alternative_fit = true;
    }
  } else {
    res.statistic =
        std::max(0.0, n_effective * std::log(res.sigma2_h0 / res.sigma2_h1));
  }
  res.fit_h0 = std::move(fit_h0);
  res.fit_h1 = std::move(fit_h1);
  return res;
}

}  // namespace

GlrtResult glrt_statistic(const Eigen::VectorXd& x, int p,
                          const BasisSet& basis) {
  auto basis0 = make_basis(basis.kind, 0, basis.length);
  auto fit_h1 = fit_covariance(x, p, basis);
  auto fit_h0 = fit_covariance(x, p, basis0);
  const double ms = x.squaredNorm() / x.size();
  return ratio_result(std::move(fit_h0), std::move(fit_h1),
                      static_cast<int>(x.size()) - p, ms);
}

GlrtResult glrt_statistic_autocorrelation(const Eigen::VectorXd& x, int p,
                                          const BasisSet& basis,
                                          const Eigen::VectorXd* window) {
  auto basis0 = make_basis(basis.kind, 0, basis.length);
  auto fit_h1 = fit_autocorrelation(x, p, basis, window);
  auto fit_h0 = fit_autocorrelation(x, p, basis0, window);
  const double ms = x.squaredNorm() / x.size();
  return ratio_result(std::move(fit_h0), std::move(fit_h1),
                      static_cast<int>(x.size()), ms);
}

double chi2_cdf(int dof, double t) {
  if (dof < 1) throw InvalidArgumentError("chi2_cdf: dof must be >= 1");
  if (t <= 0.0) return 0.0;
  return gamma_p(dof / 2.0, t / 2.0);
}

double chi2_quantile(int dof, double prob) {
  if (dof < 1) throw InvalidArgumentError("chi2_quantile: dof must be >= 1");
  if (!(prob > 0.0 && prob < 1.0))
    throw InvalidArgumentError("chi2_quantile: prob must be in (0, 1)");
  double lo = 0.0;
  double hi = std::max(2.0 * dof, 20.0);
  for (int i = 0; i < 200 && chi2_cdf(dof, hi) < prob; ++i) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chi2_cdf(dof, mid) < prob)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double cfar_threshold(int p, int q, double alarm_rate) {
  if (p < 1 || q < 1)
    throw InvalidArgumentError("cfar_threshold: need p >= 1 and q >= 1");
  if (!(alarm_rate > 0.0 && alarm_rate < 1.0))
    throw InvalidArgumentError("cfar_threshold: rate must be in (0, 1)");
  return chi2_quantile(p * q, 1.0 - alarm_rate);
}

Eigen::VectorXd step_down_autocorrelation(const Eigen::VectorXd& ar_coeffs,
                                          double sigma2) {
  const int p = static_cast<int>(ar_coeffs.size());
  if (p < 1) throw InvalidArgumentError("autocorrelation: empty model");
  if (!(sigma2 > 0.0))
    throw InvalidArgumentError("autocorrelation: sigma2 must be positive");

  // Stability: companion-matrix roots strictly inside the unit circle.
  if (p == 1) {
    if (std::abs(ar_coeffs(0)) >= 1.0 - 1e-10)
      throw UnstableModelError("autocorrelation: AR root on or outside unit circle");
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    companion.row(0) = ar_coeffs.transpose();
    companion.block(1, 0, p - 1, p - 1).setIdentity();
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
    if (es.eigenvalues().cwiseAbs().maxCoeff() >= 1.0 - 1e-10)
      throw UnstableModelError("autocorrelation: AR root on or outside unit circle");
  }

  // Yule-Walker for (r_0 .. r_p): the gain equation plus lags 1..p.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(p + 1, p + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p + 1);
  m(0, 0) = 1.0;
  for (int i = 1; i <= p; ++i) m(0, i) -= ar_coeffs(i - 1);
  rhs(0) = sigma2;
  for (int k = 1; k <= p; ++k) {
    m(k, k) += 1.0;
    for (int i = 1; i <= p; ++i) m(k, std::abs(k - i)) -= ar_coeffs(i - 1);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible())
    throw UnstableModelError("autocorrelation: Yule-Walker system is singular");
  Eigen::VectorXd r = lu.solve(rhs);
  if (!r.allFinite() || r(0) <= 0.0)
    throw UnstableModelError("autocorrelation: no stationary solution");
  return r.head(p);
}

PowerSpec noncentrality_schur(const Eigen::VectorXd& alpha, double sigma2,
                              const BasisSet& basis, int p) {
  if (p < 1) throw InvalidArgumentError("noncentrality: p must be >= 1");
  const int q = basis.q;
  if (alpha.size() != static_cast<Eigen::Index>(p) * (q + 1))
    throw DimensionMismatchError("noncentrality: alpha must have p*(q+1) entries");
  if (!(sigma2 > 0.0))
    throw InvalidArgumentError("noncentrality: sigma2 must be positive");
  const int n = basis.length;
  if (n <= p)
    throw InsufficientDataError("noncentrality: basis shorter than the model");

  PowerSpec spec;
  spec.dof = p * q;

  Eigen::VectorXd r = step_down_autocorrelation(alpha.head(p), sigma2);
  spec.autocorrelation.resize(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) spec.autocorrelation(i, j) = r(std::abs(i - j));

  spec.basis_regressors = basis.values.bottomRows(n - p);
  Eigen::MatrixXd gram =
      spec.basis_regressors.transpose() * spec.basis_regressors;

  // Full-length trajectories shifted by the prediction-window column
  // means, so the trace form (which restricts to rows p..N-1 itself)
  // consumes this field directly.
  Eigen::MatrixXd traj = eval_trajectories(alpha, basis, p);
  traj.rowwise() -= traj.bottomRows(n - p).colwise().mean();
  spec.centered_trajectories = traj;

  if (q == 0) {
    spec.lambda = 0.0;
    return spec;
  }

  // Information matrix kron(gram, R)/sigma2 in canonical block order;
  // eliminate the constant-basis block, then apply the quadratic form.
  const int d = p * (q + 1);
  Eigen::MatrixXd info(d, d);
  for (int j = 0; j <= q; ++j)
    for (int k = 0; k <= q; ++k)
      info.block(j * p, k * p, p, p) =
          (gram(j, k) / sigma2) * spec.autocorrelation;
  Eigen::LLT<Eigen::MatrixXd> llt(info.topLeftCorner(p, p));
  if (llt.info() != Eigen::Success)
    throw SingularBlockError("noncentrality: constant block is singular");
  Eigen::MatrixXd cross = info.topRightCorner(p, d - p);
  Eigen::MatrixXd schur =
      info.bottomRightCorner(d - p, d - p) - cross.transpose() * llt.solve(cross);
  Eigen::VectorXd tv = alpha.tail(p * q);
  spec.lambda = std::max(0.0, tv.dot(schur * tv));
  return spec;
}

double noncentrality_trace(const Eigen::MatrixXd& trajectories,
                           const Eigen::MatrixXd& r, double sigma2) {
  const int p = static_cast<int>(r.rows());
  if (r.cols() != p || p < 1)
    throw InvalidArgumentError("noncentrality: R must be square");
  if (trajectories.cols() != p)
    throw DimensionMismatchError("noncentrality: trajectory columns must match R");
  if (trajectories.rows() <= p)
    throw InsufficientDataError("noncentrality: trajectory too short");
  if (!(sigma2 > 0.0))
    throw InvalidArgumentError("noncentrality: sigma2 must be positive");
  Eigen::MatrixXd centered = trajectories.bottomRows(trajectories.rows() - p);
  centered.rowwise() -= centered.colwise().mean();
  return std::max(0.0, (centered.transpose() * centered * r).trace() / sigma2);
}

double power(double lambda, int dof, double threshold) {
  if (dof < 1) throw InvalidArgumentError("power: dof must be >= 1");
  if (lambda < 0.0) throw InvalidArgumentError("power: lambda must be >= 0");
  if (threshold <= 0.0) return 1.0;
  if (lambda == 0.0) return 1.0 - chi2_cdf(dof, threshold);

  // Poisson mixture of central upper tails, expanded outward from the
  // mode so extreme noncentralities stay in range.
  const double h = lambda / 2.0;
  const double x2 = threshold / 2.0;
  const long k0 = static_cast<long>(h);
  const long m0 = dof + 2 * k0;

  auto tail_term = [&](long m) {
    // chi-squared density mass Q_{m+2} - Q_m at the threshold
    return std::exp((m / 2.0) * std::log(x2) - x2 - std::lgamma(m / 2.0 + 1.0));
  };

  const double w0 = std::exp(k0 * std::log(h) - h - std::lgamma(k0 + 1.0));
  const double q0 = 1.0 - chi2_cdf(static_cast<int>(m0), threshold);
  double sum = w0 * q0;

  // Upward in the Poisson index.
  {
    double w = w0, q = q0, t = tail_term(m0);
    long m = m0;
    for (long k = k0 + 1; k < k0 + 100000; ++k) {
      w *= h / k;
      q += t;
      if (q > 1.0) q = 1.0;
      t *= x2 / (m / 2.0 + 1.0);
      m += 2;
      const double term = w * q;
      sum += term;
      if (term <= 1e-16 * sum && k > h) break;
    }
  }
  // Downward to the first mixture component.
  {
    double w = w0, q = q0;
    long m = m0;
    double t = tail_term(m0);
    for (long k = k0; k >= 1; --k) {
      w *= k / h;
      const double t_prev = t * (m / 2.0) / x2;
      q -= t_prev;
      if (q < 0.0) q = 0.0;
      t = t_prev;
      m -= 2;
      const double term = w * q;
      sum += term;
      if (term <= 1e-16 * sum) break;
    }
  }
  return std::min(1.0, std::max(0.0, sum));
}

}  // namespace tvar

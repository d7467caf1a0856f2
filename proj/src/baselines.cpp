#include "tvar/baselines.hpp"

#include <cmath>
#include <limits>

#include "tvar/basis.hpp"
#include "tvar/errors.hpp"
#include "tvar/estimation.hpp"

namespace tvar {

namespace {

struct SegmentFit {
  double sigma2 = 0.0;
  bool perfect = false;
  int residuals = 0;
};

SegmentFit fit_segment(const Eigen::VectorXd& x, int p) {
  auto basis = make_basis(BasisKind::Legendre, 0, static_cast<int>(x.size()));
  auto fit = fit_covariance(x, p, basis);
  SegmentFit s;
  s.sigma2 = fit.sigma2;
  s.perfect = fit.sigma2 <= 1e-24 * x.squaredNorm() / x.size();
  s.residuals = fit.n_effective;
  return s;
}

double split_score(const SegmentFit& all, const SegmentFit& left,
                   const SegmentFit& right) {
  if (all.perfect) return 0.0;  // every nested fit explains the data
  if (left.perfect || right.perfect)
    return std::numeric_limits<double>::infinity();
  return all.residuals * std::log(all.sigma2) -
         left.residuals * std::log(left.sigma2) -
         right.residuals * std::log(right.sigma2);
}

}  // namespace

double brandt_statistic_at(const Eigen::VectorXd& x, int p, int r) {
  const int n = static_cast<int>(x.size());
  if (p < 1) throw InvalidArgumentError("split statistic: p must be >= 1");
  if (r < 2 * p + 1 || r > n - 2 * p - 1)
    throw InsufficientDataError(
        "split statistic: split leaves too few samples on one side");
  auto all = fit_segment(x, p);
  auto left = fit_segment(x.head(r), p);
  auto right = fit_segment(x.tail(n - r), p);
  return split_score(all, left, right);
}

BrandtResult brandt_statistic(const Eigen::VectorXd& x, int p) {
  const int n = static_cast<int>(x.size());
  if (p < 1) throw InvalidArgumentError("split statistic: p must be >= 1");
  if (n < 4 * p + 2)
    throw InsufficientDataError("split statistic: no admissible split");
  BrandtResult res;
  res.r_min = 2 * p + 1;
  const int r_max = n - 2 * p - 1;
  res.profile.reserve(r_max - res.r_min + 1);
  auto all = fit_segment(x, p);
  res.statistic = -std::numeric_limits<double>::infinity();
  for (int r = res.r_min; r <= r_max; ++r) {
    auto left = fit_segment(x.head(r), p);
    auto right = fit_segment(x.tail(n - r), p);
    const double score = split_score(all, left, right);
    res.profile.push_back(score);
    if (score > res.statistic) {
      res.statistic = score;
      res.argmax_r = r;
    }
  }
  return res;
}

double wmg_eta(const Eigen::VectorXd& window, int p) {
  const double energy = window.squaredNorm();
  if (energy <= 0.0)
    throw ZeroEnergyError("residual energy: window has no energy");
  auto basis = make_basis(BasisKind::Legendre, 0,
                          static_cast<int>(window.size()));
  auto fit = fit_covariance(window, p, basis);
  auto err = prediction_error(window, fit, basis);
  const double eta = err.squaredNorm() / energy;
  return std::min(1.0, std::max(0.0, eta));
}

}  // namespace tvar

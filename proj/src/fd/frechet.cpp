#include "clearsky/fd/frechet.hpp"

#include <string>

#include "clearsky/fd/sqrtm.hpp"

namespace clearsky::fd {

namespace {

double cross_trace(const Eigen::MatrixXd& sigma_a, const Eigen::MatrixXd& sigma_b) {
  Eigen::MatrixXd root_a = sqrtm_spd(sigma_a);
  Eigen::MatrixXd inner = root_a * sigma_b * root_a;
  inner = ((inner + inner.transpose()) / 2.0).eval();
  return sqrtm_spd(inner).trace();
}

}  // namespace

FrechetResult frechet_distance(const FeatureStats& a, const FeatureStats& b,
                               const FrechetOptions& opts) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("frechet_distance: dims " + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()));
  }
  const long d = a.dim();

  FrechetResult res;
  res.rank_warning = (a.n < d) || (b.n < d);

  double tr_a = a.sigma.trace();
  double tr_b = b.sigma.trace();
  double tr_cross = 0.0;
  try {
    tr_cross = cross_trace(a.sigma, b.sigma);
  } catch (const IndefiniteMatrix&) {
    // Rank-deficient fits can push the cross term slightly indefinite;
    // retry with jittered covariances (used consistently in all three trace
    // terms, so identical inputs still score 0) and flag the result.
    Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd ja = a.sigma + opts.epsilon * eye;
    Eigen::MatrixXd jb = b.sigma + opts.epsilon * eye;
    tr_a = ja.trace();
    tr_b = jb.trace();
    tr_cross = cross_trace(ja, jb);
    res.jitter_applied = true;
  }

  const double mean_term = (a.mu - b.mu).squaredNorm();
  double value = mean_term + tr_a + tr_b - 2.0 * tr_cross;
  if (value < 0.0) {
    if (value < -opts.clamp_tol) {
      throw NumericalFailure("frechet_distance: negative value " +
                             std::to_string(value) + " beyond tolerance");
    }
    value = 0.0;
  }
  res.value = value;
  return res;
}

}  // namespace clearsky::fd

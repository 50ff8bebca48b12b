#include "clearsky/fd/feature_stats.hpp"

namespace clearsky::fd {

FeatureStats fit_feature_stats(const Eigen::MatrixXd& features) {
  const long n = features.rows();
  if (n < 2) {
    throw TooFewSamples("fit_feature_stats: need at least 2 samples, got " +
                        std::to_string(n));
  }
  if (!features.allFinite()) {
    throw NonFiniteInput("fit_feature_stats: non-finite feature entries");
  }

  FeatureStats out;
  out.n = n;
  out.mu = features.colwise().mean();

  Eigen::MatrixXd centered = features.rowwise() - out.mu.transpose();
  out.sigma = (centered.adjoint() * centered) / double(n - 1);
  out.sigma = ((out.sigma + out.sigma.transpose()) / 2.0).eval();
  return out;
}

}  // namespace clearsky::fd

#pragma once

#include <Eigen/Dense>

#include "clearsky/errors.hpp"

namespace clearsky::fd {

/// Gaussian fit of a feature population: the object the Frechet distance
/// compares. Covariance is the unbiased (n-1) estimate, symmetrized on
/// construction.
struct FeatureStats {
  Eigen::VectorXd mu;
  Eigen::MatrixXd sigma;
  long n = 0;

  long dim() const { return static_cast<long>(mu.size()); }
};

/// Fit mean and covariance to a row-per-sample feature matrix.
/// Throws TooFewSamples for n < 2 and NonFiniteInput on NaN/inf entries.
FeatureStats fit_feature_stats(const Eigen::MatrixXd& features);

}  // namespace clearsky::fd

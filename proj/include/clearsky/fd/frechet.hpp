#pragma once

#include "clearsky/fd/feature_stats.hpp"

namespace clearsky::fd {

struct FrechetOptions {
  double epsilon = 1e-6;   // jitter added to both covariances on PSD failure
  double clamp_tol = 1e-6; // negative results above -clamp_tol clamp to 0
};

struct FrechetResult {
  double value = 0.0;        // squared Frechet distance
  bool jitter_applied = false;
  bool rank_warning = false; // n < d on either side
};

/// Squared Frechet distance between two Gaussian fits,
///   |mu_a - mu_b|^2 + tr(Sigma_a + Sigma_b - 2 (Sigma_a^1/2 Sigma_b Sigma_a^1/2)^1/2)
/// with the cross term evaluated in its symmetric form.
FrechetResult frechet_distance(const FeatureStats& a, const FeatureStats& b,
                               const FrechetOptions& opts = {});

}  // namespace clearsky::fd

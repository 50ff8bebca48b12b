#pragma once

#include <Eigen/Dense>

namespace clearsky::fd {

inline constexpr double kSymmetryTol = 1e-9;
inline constexpr double kEigenvalueFloor = -1e-8;

/// Principal square root of a symmetric PSD matrix via symmetric
/// eigendecomposition. Eigenvalues in [kEigenvalueFloor, 0) are clamped to
/// zero; anything lower throws IndefiniteMatrix. Asymmetry beyond
/// kSymmetryTol (relative to the largest entry) throws NotSymmetric.
Eigen::MatrixXd sqrtm_spd(const Eigen::MatrixXd& m);

}  // namespace clearsky::fd

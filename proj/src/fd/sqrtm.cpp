#include "clearsky/fd/sqrtm.hpp"

#include <Eigen/Eigenvalues>

#include "clearsky/errors.hpp"

namespace clearsky::fd {

Eigen::MatrixXd sqrtm_spd(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw NotSymmetric("sqrtm_spd: matrix is not square");
  }
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale) {
    throw NotSymmetric("sqrtm_spd: asymmetry " + std::to_string(asym) +
                       " exceeds tolerance");
  }

  // Work on the symmetrized matrix so round-off in the caller cannot leak
  // into the eigensolver.
  Eigen::MatrixXd sym = (m + m.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("sqrtm_spd: eigendecomposition failed");
  }

  Eigen::VectorXd evals = es.eigenvalues();
  const double floor = kEigenvalueFloor * scale;
  for (long i = 0; i < evals.size(); ++i) {
    if (evals[i] < floor) {
      throw IndefiniteMatrix("sqrtm_spd: eigenvalue " + std::to_string(evals[i]) +
                             " below PSD tolerance");
    }
    evals[i] = std::max(evals[i], 0.0);
  }

  Eigen::MatrixXd root = es.eigenvectors() *
                         evals.cwiseSqrt().asDiagonal() *
                         es.eigenvectors().transpose();
  return ((root + root.transpose()) / 2.0).eval();
}

}  // namespace clearsky::fd

#pragma once

// Seeded samplers for states, unitaries, channels and rotations.

#include "asymmodes/core.hpp"
#include "asymmodes/su2.hpp"

#include <numbers>
#include <random>
#include <vector>

namespace asymmodes {

using Rng = std::mt19937_64;

inline ComplexMatrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = cplx(n(rng), n(rng));
  return a;
}

inline ComplexVector random_pure_vector(Eigen::Index d, Rng& rng) {
  ComplexVector v = random_gaussian_matrix(d, 1, rng).col(0);
  return v / v.norm();
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
inline ComplexMatrix random_unitary(Eigen::Index d, Rng& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_gaussian_matrix(d, d, rng));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR();
  for (Eigen::Index i = 0; i < d; ++i) {
    const cplx ph = r(i, i) / std::abs(r(i, i));
    q.col(i) *= ph;
  }
  return q;
}

/// Mixed state of full rank from the Hilbert-Schmidt ensemble.
inline DensityMatrix random_density(Eigen::Index d, Rng& rng) {
  const ComplexMatrix g = random_gaussian_matrix(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

inline DensityMatrix random_pure_density(Eigen::Index d, Rng& rng) {
  return DensityMatrix::pure(random_pure_vector(d, rng));
}

/// Kraus operators of a random CPTP map from a Haar isometry C^in -> C^out (x) C^rank.
inline std::vector<ComplexMatrix> random_cptp_kraus(Eigen::Index in_dim, Eigen::Index out_dim,
                                                    int rank, Rng& rng) {
  if (rank < 1 || out_dim * rank < in_dim)
    throw InvalidInput("random_cptp_kraus: need out_dim * rank >= in_dim");
  Eigen::HouseholderQR<ComplexMatrix> qr(random_gaussian_matrix(out_dim * rank, in_dim, rng));
  const ComplexMatrix v =
      ComplexMatrix(qr.householderQ()).leftCols(in_dim);
  std::vector<ComplexMatrix> kraus;
  for (int k = 0; k < rank; ++k) kraus.push_back(v.middleRows(k * out_dim, out_dim));
  return kraus;
}

/// Haar-distributed zyz Euler angles: alpha, gamma uniform, cos(beta) uniform.
inline EulerAngles random_rotation(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> cosb(-1.0, 1.0);
  return {angle(rng), std::acos(cosb(rng)), angle(rng)};
}

}  // namespace asymmodes

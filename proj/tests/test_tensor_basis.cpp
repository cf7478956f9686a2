#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace asymmodes;
using testing_util::max_diff;

TEST(TensorBasis, OrthonormalAndCovariant) {
  Rng rng(31);
  for (const auto& rep : testing_util::sample_reps()) {
    const auto basis = tensor_basis_general(rep);
    EXPECT_EQ(static_cast<Eigen::Index>(basis.size()), rep.dim() * rep.dim());
    EXPECT_LT(basis_orthonormality_deviation(basis), 1e-12);
    for (int s = 0; s < 5; ++s) EXPECT_LT(basis_covariance_residual(basis, random_rotation(rng)), 1e-10);
  }
}

TEST(TensorBasis, SpinOneVectorOperators) {
  const auto j = HalfInteger(1);
  const auto basis = tensor_basis_spin_j(j);
  const auto o = angular_momentum(j);
  // tr(Lz^2) = 2 for spin 1, so the normalised rank-1 operators are L/sqrt(2)
  // in spherical components.
  EXPECT_LT(max_diff(basis.at(1, 0), o.Lz / std::sqrt(2.0)), 1e-14);
  EXPECT_LT(max_diff(basis.at(1, 1), -o.Lplus / 2.0), 1e-14);
  EXPECT_LT(max_diff(basis.at(1, -1), o.Lminus / 2.0), 1e-14);
  EXPECT_LT(max_diff(basis.at(0, 0), identity(3) / std::sqrt(3.0)), 1e-14);
  // Rank 2, m = 0: 3 Lz^2 - L^2 = diag(1, -2, 1) for spin 1, norm^2 = 6.
  EXPECT_LT(max_diff(basis.at(2, 0), (3.0 * o.Lz * o.Lz - o.L2) / std::sqrt(6.0)), 1e-14);
  EXPECT_LT(max_diff(basis.at(2, 2), o.Lplus * o.Lplus / 2.0), 1e-14);
}

TEST(TensorBasis, PositiveReducedMatrixElement) {
  for (int t = 1; t <= 8; ++t) {
    const auto j = HalfInteger::from_twice(t);
    const auto basis = tensor_basis_spin_j(j);
    const auto lz = angular_momentum(j).Lz;
    EXPECT_GT(hs_inner(basis.at(1, 0), lz).real(), 0.0);
  }
}

TEST(TensorBasis, WignerEckartFactorisation) {
  // <j m'|T^mu_M|j m> / <j m; mu M | j m'> is independent of m, m', M.
  const auto j = HalfInteger::from_twice(3);
  const auto basis = tensor_basis_spin_j(j);
  for (int mu = 0; mu <= 3; ++mu) {
    double reduced = 0.0;
    bool set = false;
    for (const auto M : magnetic_numbers(mu))
      for (const auto m : magnetic_numbers(j))
        for (const auto mp : magnetic_numbers(j)) {
          const double cg = clebsch_gordan(j, m, mu, M, j, mp);
          const double el = basis.at(mu, M)(m_index(j, mp), m_index(j, m)).real();
          if (std::abs(cg) < 1e-9) {
            EXPECT_NEAR(el, 0.0, 1e-13);
            continue;
          }
          if (!set) reduced = el / cg, set = true;
          EXPECT_NEAR(el / cg, reduced, 1e-12);
        }
  }
}

TEST(TensorBasis, ModesSumToOperatorAndMatchBasisProjection) {
  Rng rng(32);
  for (const auto& rep : testing_util::sample_reps()) {
    const auto basis = tensor_basis_general(rep);
    const ComplexMatrix x = random_gaussian_matrix(rep.dim(), rep.dim(), rng);
    ComplexMatrix sum = ComplexMatrix::Zero(rep.dim(), rep.dim());
    for (const auto& [label, comp] : so3_mode_decomposition(x, rep)) {
      sum += comp;
      EXPECT_LT(max_diff(comp, basis.project(x, label.mu, label.m)), 1e-12);
    }
    EXPECT_LT(max_diff(sum, x), 1e-12);
  }
}

TEST(TensorBasis, ProjectionMatchesHaarQuadrature) {
  Rng rng(33);
  for (const auto& rep : testing_util::sample_reps()) {
    const auto rule = oracle::haar_rule_for(rep.max_spin().twice);
    const ComplexMatrix x = random_gaussian_matrix(rep.dim(), rep.dim(), rng);
    const auto quad = oracle::so3_modes_quadrature(x, testing_util::oracle_blocks(rep), rule);
    const auto modes = so3_mode_decomposition(x, rep);
    for (const auto& [key, q] : quad) {
      const ModeLabel label{HalfInteger::from_twice(key.first), HalfInteger::from_twice(key.second)};
      auto it = modes.find(label);
      const ComplexMatrix mine = it == modes.end() ? ComplexMatrix::Zero(x.rows(), x.cols()) : it->second;
      EXPECT_LT(max_diff(mine, q), 1e-10) << "mu=" << label.mu.str() << " m=" << label.m.str();
    }
  }
}

TEST(TensorBasis, HermitianConjugateStaysInRank) {
  for (const auto& rep : testing_util::sample_reps())
    EXPECT_TRUE(hermitian_conjugate_mode_check(tensor_basis_general(rep), 1e-12).passed);
}

TEST(TensorBasis, MultiplicityCounts) {
  const SU2Representation rep({{HalfInteger::from_twice(1), 2}});
  const auto basis = tensor_basis_general(rep);
  EXPECT_EQ(basis.multiplicity(0), 4);
  EXPECT_EQ(basis.multiplicity(1), 4);
  EXPECT_EQ(basis.multiplicity(2), 0);
  EXPECT_THROW(basis.at(2, 0), std::out_of_range);
}

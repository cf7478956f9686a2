#include "support/helpers.hpp"
#include "support/oracles.hpp"

#include <numbers>

using namespace asymmodes;
using testing_util::max_diff;

namespace {

U1Representation psi_rep(int n) {
  U1Representation r;
  for (int c = 1; c <= n; ++c) r.charges.push_back(c);
  return r;
}

/// Random U(1)-covariant channel: every Kraus operator shifts charge by a fixed
/// amount, then the set is normalised by S^{-1/2} with S = sum K^dagger K (which
/// is charge-diagonal, so the shift structure survives).
Superoperator random_u1_covariant(const U1Representation& rep, Rng& rng) {
  const auto d = rep.dim();
  std::vector<ComplexMatrix> kraus;
  for (int shift = -rep.spread(); shift <= rep.spread(); ++shift)
    kraus.push_back(u1_mode_project(random_gaussian_matrix(d, d, rng), rep, shift));
  ComplexMatrix s = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus) s += k.adjoint() * k;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
  const ComplexMatrix inv_sqrt =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
  for (auto& k : kraus) k = k * inv_sqrt;
  return channel_from_kraus(kraus, 1e-9).channel;
}

}  // namespace

TEST(U1, MaskingMatchesFourierSampling) {
  Rng rng(11);
  const U1Representation rep{{0, 2, 1, 3, 1, -1}};
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix x = random_gaussian_matrix(rep.dim(), rep.dim(), rng);
    for (int k = -rep.spread(); k <= rep.spread(); ++k)
      EXPECT_LT(max_diff(u1_mode_project(x, rep, k), oracle::u1_mode_dft(x, rep.charges, k)), 1e-12);
  }
}

TEST(U1, ModesSumToOperator) {
  Rng rng(12);
  const U1Representation rep{{0, 1, 1, 4}};
  const ComplexMatrix x = random_gaussian_matrix(4, 4, rng);
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (const auto& [k, c] : u1_mode_spectrum(x, rep).components) sum += c;
  EXPECT_LT(max_diff(sum, x), 1e-14);
}

TEST(U1, DiagonalStateHasOnlyModeZero) {
  Rng rng(13);
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 0.2;
  d(1, 1) = 0.3;
  d(2, 2) = 0.5;
  EXPECT_EQ(u1_modes_of(d, U1Representation{{0, 1, 2}}), std::set<int>{0});
}

TEST(U1, UniformSuperpositionTable) {
  for (int n : {1, 2, 3, 5, 8}) {
    const auto rho = DensityMatrix::pure(ComplexVector::Ones(n));
    const auto rep = psi_rep(n);
    for (int k = -n; k <= n; ++k) {
      const double expect = std::max(0.0, 1.0 - std::abs(k) / double(n));
      EXPECT_NEAR(u1_mode_monotone(rho, rep, k), expect, 1e-12) << "N=" << n << " k=" << k;
    }
  }
}

TEST(U1, JointModesComposeAsConvolution) {
  Rng rng(14);
  const U1Representation r1{{0, 1, 2}}, r2{{0, 1}};
  const auto a = random_density(3, rng), b = random_density(2, rng);
  const auto joint = u1_joint_rep(r1, r2);
  const ComplexMatrix ab = tensor_product(a.matrix(), b.matrix());
  for (int j = -3; j <= 3; ++j)
    EXPECT_LT(max_diff(joint_mode_components(a, r1, b, r2, j), u1_mode_project(ab, joint, j)), 1e-13);
}

TEST(U1, WeightedTwirlSpecialCases) {
  Rng rng(15);
  const U1Representation rep{{0, 1, 2, 3}};
  const auto rho = random_density(4, rng);
  EXPECT_LT(max_diff(u1_weighted_twirl(rho, rep, FourierWeights::uniform()).matrix(),
                     u1_mode_project(rho, rep, 0)),
            1e-14);
  const double t0 = 0.83;
  const ComplexMatrix u = rep.unitary(t0);
  EXPECT_LT(max_diff(u1_weighted_twirl(rho, rep, FourierWeights::delta(t0)).matrix(), u * rho.matrix() * u.adjoint()),
            1e-13);
  const auto mix = u1_weighted_twirl(rho, rep, FourierWeights::delta_mixture({{0.25, 0.4}, {0.75, -1.1}}));
  const ComplexMatrix u1 = rep.unitary(0.4), u2 = rep.unitary(-1.1);
  EXPECT_LT(max_diff(mix.matrix(),
                     0.25 * u1 * rho.matrix() * u1.adjoint() + 0.75 * u2 * rho.matrix() * u2.adjoint()),
            1e-13);
}

TEST(U1, GaussianWeightsScaleModes) {
  Rng rng(16);
  const U1Representation rep{{0, 1, 2}};
  const auto rho = random_density(3, rng);
  const double s = 0.6;
  const auto sigma = u1_weighted_twirl(rho, rep, FourierWeights::gaussian(s));
  for (int k = -2; k <= 2; ++k)
    EXPECT_NEAR(u1_mode_monotone(sigma, rep, k), std::exp(-0.5 * k * k * s * s) * u1_mode_monotone(rho, rep, k),
                1e-12);
}

TEST(U1, SampledDensityConvergesToClosedForm) {
  const double s = 0.5;
  auto wrapped = [s](double th) {
    double v = 0.0;
    for (int w = -10; w <= 10; ++w) v += std::exp(-0.5 * std::pow(th + 2.0 * std::numbers::pi * w, 2) / (s * s));
    return v;
  };
  const auto sampled = FourierWeights::from_density(wrapped, 256);
  const auto exact = FourierWeights::gaussian(s);
  for (int k = -6; k <= 6; ++k) EXPECT_LT(std::abs(sampled(k) - exact(k)), 1e-12);
  EXPECT_LT(FourierWeights::sampling_error(wrapped, 256, 6), 1e-10);
}

TEST(U1, InvalidWeightsRejected) {
  const U1Representation rep{{0, 1}};
  const auto rho = DensityMatrix::maximally_mixed(2);
  EXPECT_THROW(u1_weighted_twirl(rho, rep, FourierWeights::from_map({{0, 0.5}})), InvalidInput);
  EXPECT_THROW(u1_weighted_twirl(rho, rep, FourierWeights::from_map({{0, 1.0}, {1, 2.0}})), InvalidInput);
  EXPECT_THROW(FourierWeights::from_density([](double) { return -1.0; }, 8), InvalidInput);
}

TEST(U1, TransitionBoundVerdicts) {
  const U1Representation rep{{0, 1}};
  const auto sym = DensityMatrix::maximally_mixed(2);
  const auto plus = DensityMatrix::pure(ComplexVector::Ones(2));
  const auto to_asym = u1_transition_bound(sym, plus, rep);
  EXPECT_FALSE(to_asym.modes_contained);
  EXPECT_EQ(to_asym.overall, 0.0);
  const auto to_sym = u1_transition_bound(plus, sym, rep);
  EXPECT_TRUE(to_sym.modes_contained);
  EXPECT_DOUBLE_EQ(to_sym.overall, 1.0);
}

TEST(U1, CovariantChannelsNeverIncreaseModes) {
  Rng rng(17);
  const U1Representation rep{{0, 1, 2, 3}};
  for (int t = 0; t < 30; ++t) {
    const auto e = random_u1_covariant(rep, rng);
    const auto rho = random_density(4, rng);
    const DensityMatrix out(apply_superop(e, rho.matrix()), 1e-9);
    for (int k = -3; k <= 3; ++k) {
      EXPECT_LE(u1_mode_monotone(out, rep, k), u1_mode_monotone(rho, rep, k) + 1e-9);
      // A covariant map sends mode k into mode k.
      const ComplexMatrix img = apply_superop(e, u1_mode_project(rho, rep, k));
      EXPECT_LT(max_diff(u1_mode_project(img, rep, k), img), 1e-12);
    }
  }
}

TEST(U1, EnsembleBoundFlagsInfeasibleSplit) {
  const U1Representation rep{{0, 1}};
  const auto plus = DensityMatrix::pure(ComplexVector::Ones(2));
  const auto mixed = DensityMatrix::maximally_mixed(2);
  EXPECT_TRUE(u1_ensemble_bound(plus, Ensemble{{mixed, 0.5}, {plus, 0.5}}, rep).feasible);
  EXPECT_FALSE(u1_ensemble_bound(mixed, Ensemble{{plus, 1.0}}, rep).feasible);
  EXPECT_THROW(u1_ensemble_bound(plus, Ensemble{{plus, 0.8}, {mixed, 0.8}}, rep), InvalidInput);
}

TEST(U1, CoherentStateMatchesLogFormula) {
  const auto c = coherent_state(cplx(1.5, 0.0), 60);
  EXPECT_LT(c.tail_probability, 1e-40);
  EXPECT_FALSE(c.tail_warning);
  for (int n = 0; n <= 60; ++n) EXPECT_NEAR(std::abs(c.amplitudes(n)), oracle::coherent_abs(1.5, n), 1e-15);
  const auto short_cut = coherent_state(cplx(3.0, 0.0), 5);
  EXPECT_TRUE(short_cut.tail_warning);
  EXPECT_EQ(default_n_max(cplx(2.0, 0.0)), 24);
}

TEST(U1, AlignmentStateIsJointTwirl) {
  Rng rng(18);
  const U1Representation rf{{0, 1, 2}}, sys{{0, 1}};
  const auto tau = random_density(3, rng), rho = random_density(2, rng);
  const auto out = alignment_accessible_state(tau, rf, rho, sys, FourierWeights::uniform());
  const ComplexMatrix joint = tensor_product(tau.matrix(), rho.matrix());
  EXPECT_LT(max_diff(out.matrix(), u1_mode_project(joint, u1_joint_rep(rf, sys), 0)), 1e-13);
}

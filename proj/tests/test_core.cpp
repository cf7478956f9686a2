#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace asymmodes;
using testing_util::max_diff;

TEST(Core, VecIsRowStacking) {
  ComplexMatrix x(2, 3);
  x << 1, 2, 3, 4, 5, 6;
  const auto v = vec(x);
  EXPECT_EQ(v(1), cplx(2.0));
  EXPECT_EQ(v(3), cplx(4.0));
  EXPECT_EQ(unvec(v, 2, 3), x);
}

TEST(Core, VecOfProductIdentity) {
  Rng rng(1);
  const ComplexMatrix a = random_gaussian_matrix(3, 4, rng);
  const ComplexMatrix x = random_gaussian_matrix(4, 2, rng);
  const ComplexMatrix b = random_gaussian_matrix(2, 5, rng);
  const ComplexVector lhs = vec(a * x * b);
  const ComplexVector rhs = tensor_product(a, ComplexMatrix(b.transpose())) * vec(x);
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Core, PartialTraceOfProduct) {
  Rng rng(2);
  const auto a = random_density(2, rng);
  const auto b = random_density(3, rng);
  const ComplexMatrix ab = tensor_product(a.matrix(), b.matrix());
  EXPECT_LT(max_diff(partial_trace(ab, 2, 3, Subsystem::A), a.matrix()), 1e-13);
  EXPECT_LT(max_diff(partial_trace(ab, 2, 3, Subsystem::B), b.matrix()), 1e-13);
  EXPECT_THROW(partial_trace(ab, 2, 2, Subsystem::A), DimensionError);
}

TEST(Core, TraceNormMatchesOracle) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix x = random_gaussian_matrix(5, 5, rng);
    EXPECT_NEAR(trace_norm(x), oracle::trace_norm(x), 1e-10);
    const ComplexMatrix h = x + x.adjoint();
    EXPECT_NEAR(trace_norm(h), oracle::trace_norm(h), 1e-10);
  }
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = -2.0;
  d(1, 1) = 0.5;
  EXPECT_DOUBLE_EQ(trace_norm(d), 2.5);
}

TEST(Core, DensityMatrixValidation) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix{m}, InvalidInput);  // trace 2
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{m}, InvalidInput);  // negative eigenvalue
  m = ComplexMatrix::Identity(2, 2) * 0.5;
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{m}, InvalidInput);  // not Hermitian
  EXPECT_THROW(DensityMatrix{ComplexMatrix::Zero(2, 3)}, DimensionError);
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(4));
}

TEST(Core, KrausChannelTracePreservation) {
  Rng rng(4);
  const auto k = random_cptp_kraus(3, 2, 3, rng);
  const auto ch = channel_from_kraus(k);
  EXPECT_TRUE(ch.trace_preserving);
  const auto rho = random_density(3, rng);
  const ComplexMatrix out = apply_superop(ch.channel, rho.matrix());
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
  EXPECT_NO_THROW(DensityMatrix(out, 1e-10));

  EXPECT_THROW(random_cptp_kraus(5, 2, 2, rng), InvalidInput);  // no isometry C^5 -> C^4

  auto bad = k;
  bad[0] *= 2.0;
  EXPECT_FALSE(channel_from_kraus(bad).trace_preserving);
}

TEST(Core, ComposeMatchesSequentialApplication) {
  Rng rng(5);
  const auto e1 = channel_from_kraus(random_cptp_kraus(2, 3, 2, rng)).channel;
  const auto e2 = channel_from_kraus(random_cptp_kraus(3, 2, 2, rng)).channel;
  const ComplexMatrix x = random_gaussian_matrix(2, 2, rng);
  EXPECT_LT(max_diff(apply_superop(compose(e2, e1), x), apply_superop(e2, apply_superop(e1, x))), 1e-12);
  EXPECT_THROW(compose(e1, e1), DimensionError);
}

TEST(Core, ConjugationSuperoperator) {
  Rng rng(6);
  const ComplexMatrix u = random_unitary(3, rng);
  const ComplexMatrix x = random_gaussian_matrix(3, 3, rng);
  EXPECT_LT(max_diff(apply_superop(Superoperator::conjugation(u), x), u * x * u.adjoint()), 1e-12);
}

TEST(Core, PovmValidation) {
  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  EXPECT_NO_THROW(POVM({p0, p1}));
  EXPECT_THROW(POVM({p0}), InvalidInput);
  EXPECT_THROW(POVM({p0, p1}, {"a"}), InvalidInput);
}

TEST(Core, UnitaryExpMatchesOracle) {
  Rng rng(7);
  const ComplexMatrix g = random_gaussian_matrix(4, 4, rng);
  const ComplexMatrix h = g + g.adjoint();
  const oracle::Mat ref = (cplx(0.0, -0.7) * h).exp();
  EXPECT_LT(max_diff(unitary_exp(h, 0.7), ref), 1e-11);
}

TEST(Core, PsdSqrtSquaresBack) {
  Rng rng(8);
  const auto rho = random_density(4, rng);
  const ComplexMatrix s = psd_sqrt(rho.matrix());
  EXPECT_LT(max_diff(s * s, rho.matrix()), 1e-12);
}

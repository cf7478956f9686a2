#include "support/helpers.hpp"
#include "support/oracles.hpp"

#include <numbers>

using namespace asymmodes;
using testing_util::max_diff;

TEST(HalfInteger, ArithmeticAndParsing) {
  const auto h = HalfInteger::from_twice(3);
  EXPECT_EQ(h.str(), "3/2");
  EXPECT_EQ(h.dim(), 4);
  EXPECT_FALSE(h.is_integer());
  EXPECT_EQ(h + HalfInteger::from_twice(1), HalfInteger(2));
  EXPECT_EQ(HalfInteger::from_double(2.5).twice, 5);
  EXPECT_THROW(HalfInteger::from_double(0.3), InvalidInput);
  EXPECT_EQ(abs(-h), h);
}

TEST(AngularMomentum, CommutationRelations) {
  for (int t = 0; t <= 6; ++t) {
    const auto j = HalfInteger::from_twice(t);
    const auto o = angular_momentum(j);
    const cplx i(0.0, 1.0);
    EXPECT_LT(max_diff(o.Lx * o.Ly - o.Ly * o.Lx, i * o.Lz), 1e-12);
    EXPECT_LT(max_diff(o.Ly * o.Lz - o.Lz * o.Ly, i * o.Lx), 1e-12);
    EXPECT_LT(max_diff(o.L2, j.value() * (j.value() + 1) * identity(j.dim())), 1e-12);
    EXPECT_LT(o.Lx.imag().cwiseAbs().maxCoeff(), 1e-15);
    if (t > 0) EXPECT_DOUBLE_EQ(o.Lz(0, 0).real(), j.value());
  }
}

TEST(ClebschGordan, MatchesDiagonalisationOracle) {
  for (int t1 = 0; t1 <= 4; ++t1)
    for (int t2 = 0; t2 <= 4; ++t2)
      for (int tJ = std::abs(t1 - t2); tJ <= t1 + t2; tJ += 2) {
        const oracle::Mat ref = oracle::cg_by_diagonalisation(t1, t2, tJ);
        const auto j1 = HalfInteger::from_twice(t1), j2 = HalfInteger::from_twice(t2),
                   J = HalfInteger::from_twice(tJ);
        for (int iM = 0; iM <= tJ; ++iM)
          for (int i1 = 0; i1 <= t1; ++i1)
            for (int i2 = 0; i2 <= t2; ++i2) {
              const auto m1 = HalfInteger::from_twice(t1 - 2 * i1), m2 = HalfInteger::from_twice(t2 - 2 * i2),
                         M = HalfInteger::from_twice(tJ - 2 * iM);
              EXPECT_NEAR(clebsch_gordan(j1, m1, j2, m2, J, M), ref(i1 * (t2 + 1) + i2, iM).real(), 1e-12)
                  << j1.str() << " " << m1.str() << " " << j2.str() << " " << m2.str() << " | " << J.str() << " "
                  << M.str();
            }
      }
}

TEST(ClebschGordan, SelectionRulesAndKnownValues) {
  const auto h = HalfInteger::from_twice(1);
  EXPECT_NEAR(clebsch_gordan(h, h, h, -h, 0, 0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(clebsch_gordan(h, -h, h, h, 0, 0), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(clebsch_gordan(1, 1, 1, 1, 1, 1), 0.0);   // M mismatch
  EXPECT_EQ(clebsch_gordan(1, 0, 1, 0, 3, 0), 0.0);   // triangle
  EXPECT_NEAR(clebsch_gordan(1, 0, 1, 0, 1, 0), 0.0, 1e-15);
  EXPECT_EQ(clebsch_gordan(h, h, 1, 0, 1, 1), 0.0);  // j1 + j2 + J not integer
  EXPECT_THROW(clebsch_gordan(h, 0, h, h, 1, 0), InvalidInput);
}

TEST(WignerD, MatchesExponentialOracle) {
  Rng rng(21);
  for (int t = 0; t <= 8; ++t) {
    const auto j = HalfInteger::from_twice(t);
    for (int s = 0; s < 5; ++s) {
      const auto g = random_rotation(rng);
      EXPECT_LT(max_diff(wigner_D(j, g.alpha, g.beta, g.gamma), oracle::wigner_D(t, g.alpha, g.beta, g.gamma)),
                1e-11)
          << "j=" << j.str();
    }
  }
}

TEST(WignerD, SchurOrthogonalityByQuadrature) {
  const auto rule = oracle::haar_rule_for(2);
  for (int ta = 0; ta <= 2; ++ta)
    for (int tb = 0; tb <= 2; ++tb) {
      ComplexMatrix acc = ComplexMatrix::Zero((ta + 1) * (tb + 1), (ta + 1) * (tb + 1));
      for (double a : rule.alpha)
        for (std::size_t ib = 0; ib < rule.beta.size(); ++ib)
          for (double c : rule.gamma) {
            const ComplexMatrix da = wigner_D(HalfInteger::from_twice(ta), a, rule.beta[ib], c);
            const ComplexMatrix db = wigner_D(HalfInteger::from_twice(tb), a, rule.beta[ib], c);
            acc += rule.walpha * rule.wgamma * rule.wbeta[ib] * tensor_product(ComplexMatrix(da.conjugate()), db);
          }
      // int conj(D^a_{mn}) D^b_{m'n'} = delta_ab delta_mm' delta_nn' / d_a; the
      // kron layout puts (m, m') in rows and (n, n') in columns.
      ComplexMatrix expect = ComplexMatrix::Zero(acc.rows(), acc.cols());
      if (ta == tb)
        for (int m = 0; m <= ta; ++m)
          for (int n = 0; n <= ta; ++n) expect(m * (ta + 1) + m, n * (ta + 1) + n) = 1.0 / (ta + 1);
      EXPECT_LT(max_diff(acc, expect), 1e-12) << ta << " " << tb;
    }
}

TEST(WignerD, HomomorphismAndUnitarity) {
  Rng rng(22);
  const auto j = HalfInteger::from_twice(3);
  const auto g1 = random_rotation(rng), g2 = random_rotation(rng);
  const ComplexMatrix d1 = wigner_D(j, g1.alpha, g1.beta, g1.gamma);
  EXPECT_LT(max_diff(d1.adjoint() * d1, identity(4)), 1e-13);
  // Rotations about z compose additively in alpha.
  const ComplexMatrix a = wigner_D(j, 0.3, 0.0, 0.0) * wigner_D(j, 0.5, g2.beta, g2.gamma);
  EXPECT_LT(max_diff(a, wigner_D(j, 0.8, g2.beta, g2.gamma)), 1e-13);
}

TEST(SU2Representation, LayoutAndUnitaries) {
  Rng rng(23);
  for (const auto& rep : testing_util::sample_reps()) {
    const auto g = random_rotation(rng);
    EXPECT_LT(max_diff(rep.unitary(g), rep.generators().unitary(g)), 1e-11);
    const auto [jz, jy] = oracle::rep_generators(testing_util::oracle_blocks(rep));
    EXPECT_LT(max_diff(rep.unitary(g), oracle::rotation(jz, jy, g.alpha, g.beta, g.gamma)), 1e-11);
  }
  EXPECT_THROW(SU2Representation(std::vector<SU2Representation::Block>{}), InvalidInput);
  EXPECT_THROW(SU2Representation({{HalfInteger(1), 0}}), InvalidInput);
}

TEST(SU2Representation, CouplingIsometryIntertwines) {
  Rng rng(24);
  const SU2Representation a({{HalfInteger::from_twice(1), 1}, {HalfInteger(1), 1}});
  const auto b = SU2Representation::spin(HalfInteger(1));
  const auto c = couple(a, b);
  EXPECT_EQ(c.rep.dim(), a.dim() * b.dim());
  EXPECT_LT(max_diff(c.isometry.adjoint() * c.isometry, identity(c.rep.dim())), 1e-12);
  const auto g = random_rotation(rng);
  const ComplexMatrix lhs = tensor_product(a.unitary(g), b.unitary(g)) * c.isometry;
  EXPECT_LT(max_diff(lhs, c.isometry * c.rep.unitary(g)), 1e-11);
}

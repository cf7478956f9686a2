#pragma once

// G-covariant superoperators for SU(2): reduction to coefficient matrices
// c^(mu), superoperator modes, measurement channels and simulation of channels
// with a reference frame.

#include "asymmodes/core.hpp"
#include "asymmodes/random.hpp"
#include "asymmodes/su2.hpp"
#include "asymmodes/tensor_basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

namespace asymmodes {

inline constexpr double kCovarianceTol = 1e-8;

using BasisPtr = std::shared_ptr<const TensorOperatorBasis>;

inline BasisPtr make_basis(const SU2Representation& rep) {
  return std::make_shared<const TensorOperatorBasis>(rep);
}

namespace detail {

/// Liouville matrix of X -> [h, X] under row-stacking.
inline ComplexMatrix commutator_liouville(const ComplexMatrix& h) {
  const auto d = h.rows();
  return tensor_product(h, identity(d)) - tensor_product(identity(d), ComplexMatrix(h.transpose()));
}

}  // namespace detail

/// Infinitesimal covariance residual max_a |L ad_in(J_a) - ad_out(J_a) L|. For the
/// connected group SU(2) this vanishes iff the map is covariant.
inline double covariance_residual(const Superoperator& e, const Su2Generators& in,
                                  const Su2Generators& out) {
  if (in.dim() != e.in_dim() || out.dim() != e.out_dim())
    throw DimensionError("covariance_residual: generator dimension mismatch");
  double worst = 0.0;
  for (auto axis : {&Su2Generators::x, &Su2Generators::y, &Su2Generators::z}) {
    const ComplexMatrix lhs = e.liouville() * detail::commutator_liouville(in.*axis);
    const ComplexMatrix rhs = detail::commutator_liouville(out.*axis) * e.liouville();
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  return worst;
}

inline double covariance_residual(const Superoperator& e, const SU2Representation& in,
                                  const SU2Representation& out) {
  return covariance_residual(e, in.generators(), out.generators());
}

struct SuperopModeSpectrum {
  std::map<ModeLabel, Superoperator> components;
  std::map<ModeLabel, double> norms;  // HS norm of each Liouville component
};

namespace detail {

struct SuperopCoordinates {
  TensorOperatorBasis in, out;
  ComplexMatrix w_in, w_out;
};

inline SuperopCoordinates superop_coordinates(const Superoperator& e, const SU2Representation& in_rep,
                                              const SU2Representation& out_rep) {
  if (in_rep.dim() != e.in_dim() || out_rep.dim() != e.out_dim())
    throw DimensionError("superoperator modes: representation dimension mismatch");
  SuperopCoordinates c{TensorOperatorBasis(in_rep), TensorOperatorBasis(out_rep), {}, {}};
  c.w_in = c.in.vectorized();
  c.w_out = c.out.vectorized();
  return c;
}

}  // namespace detail

/// All (mu, m) components of a superoperator under E -> U_out E(U_in^dagger . U_in) U_out^dagger.
/// In tensor coordinates the map is an operator between the multiplet spaces of
/// the input and output bases, and is decomposed like any other operator.
inline SuperopModeSpectrum superop_mode_decomposition(const Superoperator& e,
                                                      const SU2Representation& in_rep,
                                                      const SU2Representation& out_rep) {
  const auto c = detail::superop_coordinates(e, in_rep, out_rep);
  const ComplexMatrix coords = c.w_out.adjoint() * e.liouville() * c.w_in;
  SuperopModeSpectrum s;
  for (auto& [label, block] :
       mode_decomposition(coords, c.out.coordinate_sectors(), c.in.coordinate_sectors())) {
    Superoperator comp(e.in_dim(), e.out_dim(), c.w_out * block * c.w_in.adjoint());
    s.norms[label] = hs_norm(comp.liouville());
    s.components.emplace(label, std::move(comp));
  }
  return s;
}

inline Superoperator superop_mode_project(const Superoperator& e, const SU2Representation& in_rep,
                                          const SU2Representation& out_rep, HalfInteger mu,
                                          HalfInteger m) {
  const auto c = detail::superop_coordinates(e, in_rep, out_rep);
  const ComplexMatrix coords = c.w_out.adjoint() * e.liouville() * c.w_in;
  const ComplexMatrix block =
      mode_component(coords, c.out.coordinate_sectors(), c.in.coordinate_sectors(), mu, m);
  return Superoperator(e.in_dim(), e.out_dim(), c.w_out * block * c.w_in.adjoint());
}

/// Group average of the map, i.e. its (0, 0) component, computed exactly.
inline Superoperator twirl_superop(const Superoperator& e, const SU2Representation& in_rep,
                                   const SU2Representation& out_rep) {
  return superop_mode_project(e, in_rep, out_rep, HalfInteger(0), HalfInteger(0));
}

/// c^(mu)_{beta alpha} = tr(S^(mu,beta)_m^dagger E(T^(mu,alpha)_m)), one matrix per
/// rank present in both bases (rows: output multiplicity, cols: input).
struct CovariantChannelCoefficients {
  std::map<HalfInteger, ComplexMatrix> blocks;
  BasisPtr in_basis;
  BasisPtr out_basis;

  const ComplexMatrix& at(HalfInteger mu) const { return blocks.at(mu); }
};

struct Reduction {
  CovariantChannelCoefficients coefficients;
  /// max over (mu, m, alpha) of ||E(T) - sum_beta c S||_HS, including the
  /// m = mu versus m = -mu consistency gap.
  double residual = 0.0;
  double m_consistency = 0.0;

  bool covariant(double tol = kCovarianceTol) const { return residual <= tol; }
};

inline Reduction reduce_covariant(const Superoperator& e, BasisPtr in_basis, BasisPtr out_basis) {
  if (in_basis->dim() != e.in_dim() || out_basis->dim() != e.out_dim())
    throw DimensionError("reduce_covariant: basis dimension mismatch");
  Reduction red;
  red.coefficients.in_basis = in_basis;
  red.coefficients.out_basis = out_basis;
  auto coefficient_block = [&](HalfInteger mu, HalfInteger m) {
    const int na = in_basis->multiplicity(mu), nb = out_basis->multiplicity(mu);
    ComplexMatrix c(nb, na);
    for (int a = 0; a < na; ++a) {
      const ComplexMatrix y = apply_superop(e, in_basis->at(mu, m, a));
      for (int b = 0; b < nb; ++b) c(b, a) = hs_inner(out_basis->at(mu, m, b), y);
    }
    return c;
  };
  for (const auto mu : in_basis->ranks()) {
    if (out_basis->multiplicity(mu) == 0) continue;
    ComplexMatrix hi = coefficient_block(mu, mu);
    if (mu.twice > 0)
      red.m_consistency = std::max(red.m_consistency, max_abs(hi - coefficient_block(mu, -mu)));
    red.coefficients.blocks.emplace(mu, std::move(hi));
  }
  double transport = 0.0;
  for (const auto& t : *in_basis) {
    ComplexMatrix diff = apply_superop(e, t.op);
    auto it = red.coefficients.blocks.find(t.mu);
    if (it != red.coefficients.blocks.end())
      for (int b = 0; b < out_basis->multiplicity(t.mu); ++b)
        diff -= it->second(b, t.alpha) * out_basis->at(t.mu, t.m, b);
    transport = std::max(transport, hs_norm(diff));
  }
  red.residual = std::max(transport, red.m_consistency);
  return red;
}

inline Reduction reduce_covariant(const Superoperator& e, const SU2Representation& in_rep,
                                  const SU2Representation& out_rep) {
  return reduce_covariant(e, make_basis(in_rep), make_basis(out_rep));
}

/// E(X) = sum tr(T^dagger X) sum_beta c_{beta alpha} S.
inline ComplexMatrix apply_reduced(const CovariantChannelCoefficients& c, const ComplexMatrix& x) {
  const auto& in = *c.in_basis;
  const auto& out = *c.out_basis;
  if (x.rows() != in.dim() || x.cols() != in.dim())
    throw DimensionError("apply_reduced: operator dimension does not match the input basis");
  ComplexMatrix y = ComplexMatrix::Zero(out.dim(), out.dim());
  for (const auto& t : in) {
    auto it = c.blocks.find(t.mu);
    if (it == c.blocks.end()) continue;
    const cplx coord = hs_inner(t.op, x);
    if (coord == cplx(0.0)) continue;
    for (int b = 0; b < out.multiplicity(t.mu); ++b) y += coord * it->second(b, t.alpha) * out.at(t.mu, t.m, b);
  }
  return y;
}

/// Liouville form of the map described by the coefficients.
inline Superoperator to_superoperator(const CovariantChannelCoefficients& c) {
  const auto din = c.in_basis->dim(), dout = c.out_basis->dim();
  ComplexMatrix l(dout * dout, din * din);
  for (Eigen::Index i = 0; i < din; ++i)
    for (Eigen::Index j = 0; j < din; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(din, din);
      e(i, j) = 1.0;
      l.col(i * din + j) = vec(apply_reduced(c, e));
    }
  return Superoperator(din, dout, std::move(l));
}

/// d o c: per-rank matrix products.
inline CovariantChannelCoefficients compose_reduced(const CovariantChannelCoefficients& d,
                                                    const CovariantChannelCoefficients& c) {
  if (!(c.out_basis->rep() == d.in_basis->rep()))
    throw InvalidInput("compose_reduced: middle bases do not match");
  CovariantChannelCoefficients out;
  out.in_basis = c.in_basis;
  out.out_basis = d.out_basis;
  for (const auto& [mu, cb] : c.blocks) {
    auto it = d.blocks.find(mu);
    if (it != d.blocks.end()) out.blocks.emplace(mu, it->second * cb);
  }
  return out;
}

/// Number of real parameters of a rotationally covariant channel from spin-j1
/// to spin-j2 beyond the trace-fixed c^(0): 2 min(j1, j2).
inline int covariant_channel_free_parameters(HalfInteger j1, HalfInteger j2) {
  return std::min(j1.twice, j2.twice);
}

struct CoefficientBoundEntry {
  HalfInteger mu, m;
  double coefficient_abs;
  double bound;  // ||T^(mu)_m||_1 / ||S^(mu)_m||_1
  bool ok;
};

struct CoefficientBoundReport {
  std::vector<CoefficientBoundEntry> entries;
  bool passed = true;
};

/// |c^(mu)| <= ||T_m|| / ||S_m|| for positive trace-preserving maps between
/// multiplicity-free spaces.
inline CoefficientBoundReport coefficient_bounds_check(const CovariantChannelCoefficients& c,
                                                       double tol = kDefaultTol) {
  CoefficientBoundReport rep;
  for (const auto& [mu, block] : c.blocks) {
    if (block.rows() != 1 || block.cols() != 1)
      throw InvalidInput("coefficient_bounds_check: bases must be multiplicity-free");
    const double cabs = std::abs(block(0, 0));
    for (const auto m : magnetic_numbers(mu)) {
      const double bound = trace_norm(c.in_basis->at(mu, m)) / trace_norm(c.out_basis->at(mu, m));
      const bool ok = cabs <= bound + tol;
      rep.entries.push_back({mu, m, cabs, bound, ok});
      rep.passed = rep.passed && ok;
    }
  }
  return rep;
}

struct MeasurementChannel {
  Superoperator channel;
  SU2Representation flag_rep;  // one spin-0 copy per outcome
  SuperopModeSpectrum spectrum;
};

/// M(X) = sum_lambda tr(X M_lambda) |lambda><lambda| into a register carrying the
/// trivial representation.
inline MeasurementChannel measurement_channel(const POVM& povm, const SU2Representation& rep) {
  if (povm.dim() != rep.dim()) throw DimensionError("measurement_channel: dimension mismatch");
  const auto d = povm.dim();
  const auto n = static_cast<Eigen::Index>(povm.size());
  ComplexMatrix l = ComplexMatrix::Zero(n * n, d * d);
  for (Eigen::Index lam = 0; lam < n; ++lam) {
    const auto& m = povm.elements()[static_cast<std::size_t>(lam)];
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) l(lam * n + lam, i * d + j) = m(j, i);
  }
  SU2Representation flags({{HalfInteger(0), static_cast<int>(n)}});
  Superoperator ch(d, n, std::move(l));
  auto spectrum = superop_mode_decomposition(ch, rep, flags);
  return {std::move(ch), std::move(flags), std::move(spectrum)};
}

/// E(X) = tr_RF( joint(X (x) frame) ) for a covariant joint map on B(H_sys (x) H_RF).
inline Superoperator simulate_with_frame(const Superoperator& joint, const DensityMatrix& frame,
                                         const SU2Representation& sys_rep,
                                         const SU2Representation& rf_rep,
                                         double tol = kCovarianceTol) {
  const auto ds = sys_rep.dim(), dr = rf_rep.dim();
  if (frame.dim() != dr) throw DimensionError("simulate_with_frame: frame dimension mismatch");
  if (joint.in_dim() != ds * dr || joint.out_dim() != ds * dr)
    throw DimensionError("simulate_with_frame: joint map must act on B(H_sys (x) H_RF)");
  const auto gens = product_generators(sys_rep.generators(), rf_rep.generators());
  const double res = covariance_residual(joint, gens, gens);
  if (res > tol)
    throw InvalidInput("simulate_with_frame: joint map is not covariant (residual " +
                       std::to_string(res) + ")");
  ComplexMatrix l(ds * ds, ds * ds);
  for (Eigen::Index i = 0; i < ds; ++i)
    for (Eigen::Index j = 0; j < ds; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(ds, ds);
      e(i, j) = 1.0;
      const ComplexMatrix y = apply_superop(joint, tensor_product(e, frame.matrix()));
      l.col(i * ds + j) = vec(partial_trace(y, ds, dr, Subsystem::A));
    }
  return Superoperator(ds, ds, std::move(l));
}

/// Random covariant CPTP map: a random Kraus channel of rank <= max_rank (raised
/// to the smallest rank that admits an isometry), twirled.
inline Superoperator random_covariant_channel(const SU2Representation& in_rep,
                                              const SU2Representation& out_rep, Rng& rng,
                                              int max_rank = 4) {
  const int min_rank = static_cast<int>((in_rep.dim() + out_rep.dim() - 1) / out_rep.dim());
  std::uniform_int_distribution<int> rank(min_rank, std::max(min_rank, max_rank));
  const auto k = random_cptp_kraus(in_rep.dim(), out_rep.dim(), rank(rng), rng);
  return twirl_superop(channel_from_kraus(k).channel, in_rep, out_rep);
}

/// Covariant instrument: the Kraus operators of a random CPTP map split into
/// `outcomes` groups, each branch twirled. Branches sum to a covariant channel.
inline std::vector<Superoperator> random_covariant_instrument(const SU2Representation& in_rep,
                                                              const SU2Representation& out_rep,
                                                              int outcomes, Rng& rng,
                                                              int kraus_per_outcome = 2) {
  const auto k = random_cptp_kraus(in_rep.dim(), out_rep.dim(), outcomes * kraus_per_outcome, rng);
  std::vector<Superoperator> branches;
  for (int o = 0; o < outcomes; ++o) {
    std::vector<ComplexMatrix> part(k.begin() + o * kraus_per_outcome,
                                    k.begin() + (o + 1) * kraus_per_outcome);
    branches.push_back(twirl_superop(channel_from_kraus(part).channel, in_rep, out_rep));
  }
  return branches;
}

struct MissingModeReport {
  int n = 0;
  SU2Representation rep;  // blocks j = N^2 + 2k, k = 1..N
  ComplexVector state;
  double f_1_plus = 0.0, f_1_zero = 0.0, f_1_minus = 0.0;
  double max_f_m0 = 0.0;  // largest F_{mu,0} with mu > 0
  HalfInteger argmax_mu;
  double min_fidelity = 1.0;  // min over the beta grid of |<psi|R_y(beta)|psi>|^2
  double min_fidelity_beta = 0.0;
};

inline constexpr Eigen::Index kMissingModeMaxDim = 2048;

/// (1/sqrt N) sum_k |j = N^2 + 2k, m = N^2 + k>: frames of unbounded size that
/// never acquire the (1, +-1) modes.
inline MissingModeReport missing_mode_family(int n, int beta_points = 181) {
  if (n < 1) throw InvalidInput("missing_mode_family: N must be >= 1");
  std::vector<SU2Representation::Block> blocks;
  Eigen::Index dim = 0;
  for (int k = 1; k <= n; ++k) {
    const HalfInteger j(n * n + 2 * k);
    blocks.push_back({j, 1});
    dim += j.dim();
  }
  if (dim > kMissingModeMaxDim)
    throw InvalidInput("missing_mode_family: dimension " + std::to_string(dim) +
                       " exceeds the size budget of " + std::to_string(kMissingModeMaxDim));
  MissingModeReport r;
  r.n = n;
  r.rep = SU2Representation(blocks);
  r.state = ComplexVector::Zero(dim);
  const auto sec = r.rep.sectors();
  for (int k = 1; k <= n; ++k) {
    const auto& s = sec[static_cast<std::size_t>(k - 1)];
    r.state(s.indices[m_index(s.j, HalfInteger(n * n + k))]) = 1.0 / std::sqrt(double(n));
  }
  const ComplexMatrix rho = r.state * r.state.adjoint();
  const auto modes = mode_decomposition(rho, sec, sec);
  auto f = [&](HalfInteger mu, HalfInteger m) {
    auto it = modes.find({mu, m});
    return it == modes.end() ? 0.0 : trace_norm(it->second);
  };
  r.f_1_plus = f(1, 1);
  r.f_1_zero = f(1, 0);
  r.f_1_minus = f(1, -1);
  for (const auto& [label, comp] : modes)
    if (label.mu.twice > 0 && label.m.twice == 0) {
      const double v = trace_norm(comp);
      if (v > r.max_f_m0) {
        r.max_f_m0 = v;
        r.argmax_mu = label.mu;
      }
    }
  for (int i = 0; i < beta_points; ++i) {
    const double beta = std::numbers::pi * i / (beta_points - 1);
    const ComplexMatrix u = r.rep.unitary({0.0, beta, 0.0});
    const double fid = std::norm(r.state.dot(u * r.state));
    if (fid < r.min_fidelity) {
      r.min_fidelity = fid;
      r.min_fidelity_beta = beta;
    }
  }
  return r;
}

}  // namespace asymmodes

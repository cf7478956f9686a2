#pragma once

// Reference-frame misalignment and degradation of a spin-j frame under repeated
// use through a fixed rotationally covariant channel.

#include "asymmodes/channels.hpp"
#include "asymmodes/core.hpp"
#include "asymmodes/su2.hpp"
#include "asymmodes/tensor_basis.hpp"
#include "asymmodes/u1.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace asymmodes {

/// Per-rank coefficients of a covariant channel on spin-j; c^(0) = 1, |c| <= 1.
class DegradationModel {
 public:
  DegradationModel(HalfInteger j, std::map<int, double> coefficients, double tol = kDefaultTol)
      : j_(j), c_(std::move(coefficients)) {
    if (j.twice < 0) throw InvalidInput("DegradationModel: negative spin");
    c_.try_emplace(0, 1.0);
    for (int mu = 1; mu <= j.twice; ++mu)
      if (!c_.count(mu))
        throw InvalidInput("DegradationModel: missing coefficient for rank " + std::to_string(mu));
    for (const auto& [mu, c] : c_) {
      if (mu < 0 || mu > j.twice)
        throw InvalidInput("DegradationModel: rank " + std::to_string(mu) + " does not exist for spin " + j.str());
      if (std::abs(c) > 1.0 + tol)
        throw InvalidInput("DegradationModel: |c^(" + std::to_string(mu) + ")| exceeds 1");
    }
    if (std::abs(c_.at(0) - 1.0) > tol) throw InvalidInput("DegradationModel: c^(0) must be 1");
  }

  HalfInteger j() const { return j_; }
  double at(int mu) const { return c_.at(mu); }
  const std::map<int, double>& coefficients() const { return c_; }

 private:
  HalfInteger j_;
  std::map<int, double> c_;
};

struct TrajectoryStep {
  int k = 0;
  std::map<ModeLabel, cplx> expectations;  // tr(rho_k T^(mu)_m^dagger)
  double lz = 0.0;                         // <Lz>_k
  double lz2 = 0.0;                        // <Lz^2>_k
};

struct Trajectory {
  HalfInteger j;
  std::vector<TrajectoryStep> steps;
};

namespace detail {

inline std::map<ModeLabel, cplx> tensor_expectations(const ComplexMatrix& rho,
                                                     const TensorOperatorBasis& basis) {
  std::map<ModeLabel, cplx> e;
  for (const auto& t : basis) e[{t.mu, t.m}] = hs_inner(t.op, rho);
  return e;
}

/// <Lz> and <Lz^2> from the (1,0) and (2,0) tensor expectations, using
/// Lz = a T^(1)_0 and Lz^2 = j(j+1)/3 + b T^(2)_0.
inline void moments_from_expectations(TrajectoryStep& s, const TensorOperatorBasis& basis, HalfInteger j) {
  const auto ops = angular_momentum(j);
  const double jj = j.value() * (j.value() + 1.0);
  s.lz = 0.0;
  s.lz2 = jj / 3.0;
  if (j.twice >= 1) s.lz = (hs_inner(basis.at(1, 0), ops.Lz) * s.expectations.at({1, 0})).real();
  if (j.twice >= 2)
    s.lz2 += (hs_inner(basis.at(2, 0), ComplexMatrix(ops.Lz * ops.Lz)) * s.expectations.at({2, 0})).real();
}

inline void require_spin_state(const ComplexMatrix& rho, HalfInteger j, const char* what) {
  if (rho.rows() != j.dim() || rho.cols() != j.dim())
    throw DimensionError(std::string(what) + ": state is not on spin " + j.str());
}

}  // namespace detail

/// Closed-form trajectory: tr(rho_k T^dagger) = (c^(mu))^k tr(rho_0 T^dagger).
inline Trajectory degrade_trajectory(const ComplexMatrix& rho0, const DegradationModel& model, int steps) {
  const auto j = model.j();
  detail::require_spin_state(rho0, j, "degrade_trajectory");
  if (steps < 0) throw InvalidInput("degrade_trajectory: negative step count");
  const auto basis = tensor_basis_spin_j(j);
  const auto e0 = detail::tensor_expectations(rho0, basis);
  Trajectory t{j, {}};
  for (int k = 0; k <= steps; ++k) {
    TrajectoryStep s;
    s.k = k;
    for (const auto& [label, v] : e0) s.expectations[label] = std::pow(model.at(label.mu.twice / 2), k) * v;
    detail::moments_from_expectations(s, basis, j);
    t.steps.push_back(std::move(s));
  }
  return t;
}

struct ChannelTrajectory {
  Trajectory trajectory;
  std::vector<ComplexMatrix> states;
  Reduction reduction;
};

/// Iterates a covariant channel on the frame state and records the same
/// quantities as degrade_trajectory, read off the states directly.
inline ChannelTrajectory degrade_via_channel(const ComplexMatrix& rho0, const Superoperator& e, HalfInteger j,
                                             int steps, double tol = kCovarianceTol) {
  detail::require_spin_state(rho0, j, "degrade_via_channel");
  if (e.in_dim() != j.dim() || e.out_dim() != j.dim())
    throw DimensionError("degrade_via_channel: channel must act on spin " + j.str());
  const auto rep = SU2Representation::spin(j);
  ChannelTrajectory out{{j, {}}, {}, reduce_covariant(e, rep, rep)};
  if (!out.reduction.covariant(tol))
    throw InvalidInput("degrade_via_channel: channel is not covariant (residual " +
                       std::to_string(out.reduction.residual) + ")");
  const auto& basis = *out.reduction.coefficients.in_basis;
  const auto ops = angular_momentum(j);
  ComplexMatrix rho = rho0;
  for (int k = 0; k <= steps; ++k) {
    if (k > 0) rho = apply_superop(e, rho);
    TrajectoryStep s;
    s.k = k;
    s.expectations = detail::tensor_expectations(rho, basis);
    s.lz = (ops.Lz * rho).trace().real();
    s.lz2 = (ops.Lz * ops.Lz * rho).trace().real();
    out.trajectory.steps.push_back(std::move(s));
    out.states.push_back(rho);
  }
  return out;
}

/// Real coefficients of a covariant channel on spin-j as a degradation model.
inline DegradationModel degradation_model_from(const Reduction& red, HalfInteger j, double tol = 1e-9) {
  std::map<int, double> c;
  for (const auto& [mu, block] : red.coefficients.blocks) {
    if (std::abs(block(0, 0).imag()) > tol)
      throw InvalidInput("degradation_model_from: coefficient c^(" + mu.str() + ") is not real");
    c[mu.twice / 2] = block(0, 0).real();
  }
  return DegradationModel(j, std::move(c), tol);
}

/// Largest difference between two trajectories over all recorded quantities.
inline double trajectory_deviation(const Trajectory& a, const Trajectory& b) {
  if (a.steps.size() != b.steps.size()) throw InvalidInput("trajectory_deviation: length mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    const auto& x = a.steps[i];
    const auto& y = b.steps[i];
    worst = std::max({worst, std::abs(x.lz - y.lz), std::abs(x.lz2 - y.lz2)});
    for (const auto& [label, v] : x.expectations) worst = std::max(worst, std::abs(v - y.expectations.at(label)));
  }
  return worst;
}

/// Frame state seen by a party whose reference is rotated by a random phase
/// with density p: sum_k p_{-k} rho^(k).
inline DensityMatrix misalignment_state(const DensityMatrix& rho, const U1Representation& rep,
                                        const FourierWeights& weights, double tol = kDefaultTol) {
  return u1_weighted_twirl(rho, rep, weights, tol);
}

}  // namespace asymmodes

#pragma once

// Asymmetry monotones F_{mu,m} = ||rho^(mu,m)||_1 for SU(2), spin-j closed forms,
// the sigma_z discrimination probability and the parameter counts that fix a
// frame's simulation power.

#include "asymmodes/channels.hpp"
#include "asymmodes/core.hpp"
#include "asymmodes/su2.hpp"
#include "asymmodes/tensor_basis.hpp"
#include "asymmodes/u1.hpp"

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace asymmodes {

struct ModeMonotoneTable {
  std::map<ModeLabel, double> entries;

  double at(HalfInteger mu, HalfInteger m) const {
    auto it = entries.find({mu, m});
    return it == entries.end() ? 0.0 : it->second;
  }
};

inline ModeMonotoneTable mode_monotone_table(const ComplexMatrix& rho, const SU2Representation& rep) {
  ModeMonotoneTable t;
  for (const auto& [label, comp] : so3_mode_decomposition(rho, rep)) t.entries[label] = trace_norm(comp);
  return t;
}

/// Multiplicity-free route: F_{mu,m} = tr sqrt(T T^dagger) |tr(T^dagger rho)|.
inline ModeMonotoneTable mode_monotone_table_closed_form(const ComplexMatrix& rho,
                                                         const TensorOperatorBasis& basis) {
  ModeMonotoneTable t;
  for (const auto& op : basis) {
    if (op.alpha != 0 || basis.multiplicity(op.mu) != 1)
      throw InvalidInput("mode_monotone_table_closed_form: basis has multiplicity");
    t.entries[{op.mu, op.m}] = trace_norm(op.op) * std::abs(hs_inner(op.op, rho));
  }
  return t;
}

struct ModeEnsembleBound {
  std::map<ModeLabel, double> residual;  // ||rho^(mu,m)|| - sum_i p_i ||sigma_i^(mu,m)||
  bool feasible = true;
};

inline ModeEnsembleBound ensemble_bound_g(const DensityMatrix& rho, const Ensemble& ensemble,
                                          const SU2Representation& rep, double tol = kDefaultTol) {
  detail::validate_ensemble(ensemble, rho.dim(), tol);
  ModeEnsembleBound b;
  for (const auto& [label, v] : mode_monotone_table(rho.matrix(), rep).entries) b.residual[label] = v;
  for (const auto& [s, p] : ensemble)
    for (const auto& [label, v] : mode_monotone_table(s.matrix(), rep).entries) b.residual[label] -= p * v;
  for (const auto& [label, r] : b.residual)
    if (r < -tol) b.feasible = false;
  return b;
}

struct Axis {
  double x = 0.0, y = 0.0, z = 1.0;
};

namespace detail {

inline void require_spin_j(const ComplexMatrix& rho, HalfInteger j, const char* what) {
  if (rho.rows() != j.dim() || rho.cols() != j.dim())
    throw InvalidInput(std::string(what) + ": state must live on a single spin-" + j.str() +
                       " block (reducible representations are unsupported)");
}

/// Rotation taking z to n: exp(-i phi Lz) exp(-i theta Ly).
inline EulerAngles axis_rotation(const Axis& n) {
  const double r = std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
  if (r == 0.0) throw InvalidInput("axis must be nonzero");
  return {std::atan2(n.y, n.x), std::acos(std::clamp(n.z / r, -1.0, 1.0)), 0.0};
}

}  // namespace detail

/// rho expressed in a frame whose z axis is n: D^dagger rho D.
inline ComplexMatrix rotate_axis_to_z(const ComplexMatrix& rho, HalfInteger j, const Axis& n) {
  const auto g = detail::axis_rotation(n);
  const ComplexMatrix d = wigner_D(j, g.alpha, g.beta, g.gamma);
  return d.adjoint() * rho * d;
}

/// tr sqrt(Lz^2): j(j+1) for integer j, (j+1/2)^2 for half-integer j.
inline double trace_abs_lz(HalfInteger j) {
  const double v = j.value();
  return j.is_integer() ? v * (v + 1.0) : (v + 0.5) * (v + 0.5);
}

/// ||rho^(1,0)|| about axis n via the integer / half-integer closed forms.
inline double angular_momentum_monotone(const ComplexMatrix& rho, HalfInteger j, const Axis& n = {}) {
  detail::require_spin_j(rho, j, "angular_momentum_monotone");
  if (j.twice == 0) return 0.0;
  const ComplexMatrix r = rotate_axis_to_z(rho, j, n);
  const double lz = std::abs((angular_momentum(j).Lz * r).trace().real());
  const double v = j.value();
  return j.is_integer() ? 1.5 * lz / (v + 0.5) : 1.5 * lz * (v + 0.5) / (v * (v + 1.0));
}

/// |tr(rho L_n^2) - j(j+1)/3|.
inline double second_moment_monotone(const ComplexMatrix& rho, HalfInteger j, const Axis& n = {}) {
  detail::require_spin_j(rho, j, "second_moment_monotone");
  const ComplexMatrix r = rotate_axis_to_z(rho, j, n);
  const ComplexMatrix lz = angular_momentum(j).Lz;
  const double v = j.value();
  return std::abs((lz * lz * r).trace().real() - v * (v + 1.0) / 3.0);
}

struct PsuccResult {
  double formula = 0.5;
  std::optional<double> oracle;
  std::optional<double> delta;  // |formula - oracle|
  bool discrepancy = false;
};

/// Optimal equal-prior discrimination of the sigma_z eigenstates with a spin-j
/// frame under rotationally invariant measurements, computed from the exact
/// twirl of spin-1/2 (x) spin-j: 1/2 + 1/4 || G((|up><up| - |dn><dn|) (x) rho) ||_1.
inline double distinguish_success_oracle(const ComplexMatrix& rho, HalfInteger j) {
  detail::require_spin_j(rho, j, "distinguish_success_oracle");
  const auto half = SU2Representation::spin(HalfInteger::from_twice(1));
  const auto coupled = couple(half, SU2Representation::spin(j));
  ComplexMatrix sz = ComplexMatrix::Zero(2, 2);
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  const ComplexMatrix y = tensor_product(sz, rho);
  const ComplexMatrix& v = coupled.isometry;
  const ComplexMatrix inv = so3_mode_project(v.adjoint() * y * v, coupled.rep, 0, 0);
  return 0.5 + 0.25 * trace_norm(v * inv * v.adjoint());
}

/// p_succ = (1/2)[1 + |tr(rho Lz)| / (j + 1/2)], optionally cross-checked with the
/// twirl oracle; a gap above tol is flagged rather than resolved.
inline PsuccResult distinguish_success_probability(const ComplexMatrix& rho, HalfInteger j,
                                                   bool with_oracle = false, double tol = 1e-8) {
  detail::require_spin_j(rho, j, "distinguish_success_probability");
  PsuccResult r;
  const double lz = std::abs((angular_momentum(j).Lz * rho).trace().real());
  r.formula = 0.5 * (1.0 + lz / (j.value() + 0.5));
  if (with_oracle) {
    r.oracle = distinguish_success_oracle(rho, j);
    r.delta = std::abs(r.formula - *r.oracle);
    r.discrepancy = *r.delta > tol;
  }
  return r;
}

enum class SimulationTask { Measurement, Channel };

struct SimulationParameterReport {
  HalfInteger l;
  SimulationTask task = SimulationTask::Measurement;
  bool axial = false;
  int count = 0;     // (2l+1)^2-1 / (4l+1)^2-1, or 2l / 4l when axial
  int rank_cap = 0;  // highest rank (or moment order) evaluated, capped at 2j
  std::vector<std::string> names;
  std::vector<double> values;
};

/// Real parameters of a spin-j frame state that fix its power to simulate a
/// measurement or channel on a system whose largest spin is l.
inline SimulationParameterReport simulation_parameter_report(const ComplexMatrix& rho, HalfInteger j,
                                                             HalfInteger l, SimulationTask task,
                                                             std::optional<Axis> axial_axis = {}) {
  detail::require_spin_j(rho, j, "simulation_parameter_report");
  SimulationParameterReport r;
  r.l = l;
  r.task = task;
  r.axial = axial_axis.has_value();
  const int order = task == SimulationTask::Measurement ? l.twice : 2 * l.twice;  // 2l or 4l
  r.rank_cap = std::min(order, j.twice);
  if (r.axial) {
    r.count = order;
    const ComplexMatrix rz = rotate_axis_to_z(rho, j, *axial_axis);
    const ComplexMatrix lz = angular_momentum(j).Lz;
    ComplexMatrix power = identity(j.dim());
    for (int k = 1; k <= r.rank_cap; ++k) {
      power = power * lz;
      r.names.push_back("<L_n^" + std::to_string(k) + ">");
      r.values.push_back((power * rz).trace().real());
    }
    return r;
  }
  r.count = (order + 1) * (order + 1) - 1;
  const auto basis = tensor_basis_spin_j(j);
  for (int mu = 1; mu <= r.rank_cap; ++mu)
    for (int m = mu; m >= 0; --m) {
      const cplx t = hs_inner(basis.at(mu, m), rho);  // tr(rho T^dagger)^*
      const std::string tag = "T(" + std::to_string(mu) + "," + std::to_string(m) + ")";
      r.names.push_back("re " + tag);
      r.values.push_back(t.real());
      if (m > 0) {
        r.names.push_back("im " + tag);
        r.values.push_back(-t.imag());
      }
    }
  return r;
}

/// <Lx>, <Ly>, <Lz>, <Lx^2>, <Ly^2>, <LxLy+LyLx>, <LxLz+LzLx>, <LyLz+LzLy>.
inline std::array<double, 8> eight_parameters(const ComplexMatrix& rho, HalfInteger j) {
  detail::require_spin_j(rho, j, "eight_parameters");
  const auto ops = angular_momentum(j);
  auto ev = [&](const ComplexMatrix& a) { return (a * rho).trace().real(); };
  return {ev(ops.Lx),
          ev(ops.Ly),
          ev(ops.Lz),
          ev(ops.Lx * ops.Lx),
          ev(ops.Ly * ops.Ly),
          ev(ops.Lx * ops.Ly + ops.Ly * ops.Lx),
          ev(ops.Lx * ops.Lz + ops.Lz * ops.Lx),
          ev(ops.Ly * ops.Lz + ops.Lz * ops.Ly)};
}

struct EquivalenceVerdict {
  bool equivalent = false;
  double max_difference = 0.0;
};

/// Two frame states are interchangeable for the task iff every reported
/// parameter agrees within tol.
inline EquivalenceVerdict equal_moment_equivalence_check(const ComplexMatrix& rho1,
                                                         const ComplexMatrix& rho2, HalfInteger j,
                                                         HalfInteger l, SimulationTask task,
                                                         std::optional<Axis> axial_axis = {},
                                                         double tol = 1e-9) {
  const auto a = simulation_parameter_report(rho1, j, l, task, axial_axis);
  const auto b = simulation_parameter_report(rho2, j, l, task, axial_axis);
  EquivalenceVerdict v;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    v.max_difference = std::max(v.max_difference, std::abs(a.values[i] - b.values[i]));
  v.equivalent = v.max_difference <= tol;
  return v;
}

/// (1/2pi) int dtheta exp(-i theta L_n) rho exp(i theta L_n).
inline ComplexMatrix axial_symmetrization(const ComplexMatrix& rho, HalfInteger j, const Axis& n = {}) {
  detail::require_spin_j(rho, j, "axial_symmetrization");
  const auto g = detail::axis_rotation(n);
  const ComplexMatrix d = wigner_D(j, g.alpha, g.beta, g.gamma);
  ComplexMatrix rz = d.adjoint() * rho * d;
  for (Eigen::Index r = 0; r < rz.rows(); ++r)
    for (Eigen::Index c = 0; c < rz.cols(); ++c)
      if (r != c) rz(r, c) = 0.0;
  return d * rz * d.adjoint();
}

}  // namespace asymmodes

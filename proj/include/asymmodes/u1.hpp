#pragma once

// Modes of asymmetry for U(1): decomposition, monotones, weighted twirls and
// transition bounds.

#include "asymmodes/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

namespace asymmodes {

/// Charges n_i of the basis vectors; U(theta) = diag(exp(i n_i theta)).
/// Repeated charges encode multiplicity by position.
struct U1Representation {
  std::vector<int> charges;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(charges.size()); }

  int min_charge() const { return *std::min_element(charges.begin(), charges.end()); }
  int max_charge() const { return *std::max_element(charges.begin(), charges.end()); }
  int spread() const { return charges.empty() ? 0 : max_charge() - min_charge(); }

  ComplexMatrix unitary(double theta) const {
    ComplexVector d(dim());
    for (Eigen::Index i = 0; i < dim(); ++i)
      d(i) = std::exp(cplx(0.0, charges[static_cast<std::size_t>(i)] * theta));
    return d.asDiagonal();
  }

  /// Number operator truncated at n_max: charges 0..n_max.
  static U1Representation fock(int n_max) {
    U1Representation r;
    for (int n = 0; n <= n_max; ++n) r.charges.push_back(n);
    return r;
  }
};

/// Charges of the tensor-product representation in kron ordering.
inline U1Representation u1_joint_rep(const U1Representation& a, const U1Representation& b) {
  U1Representation r;
  r.charges.reserve(a.charges.size() * b.charges.size());
  for (int na : a.charges)
    for (int nb : b.charges) r.charges.push_back(na + nb);
  return r;
}

namespace detail {

inline void require_rep_dim(const ComplexMatrix& x, const U1Representation& rep, const char* what) {
  require_square(x, what);
  if (x.rows() != rep.dim())
    throw DimensionError(std::string(what) + ": operator dimension " + std::to_string(x.rows()) +
                         " does not match " + std::to_string(rep.dim()) + " charges");
}

}  // namespace detail

/// Component of x in mode k: keeps exactly the entries with charge difference k.
inline ComplexMatrix u1_mode_project(const ComplexMatrix& x, const U1Representation& rep, int k) {
  detail::require_rep_dim(x, rep, "u1_mode_project");
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      if (rep.charges[static_cast<std::size_t>(i)] - rep.charges[static_cast<std::size_t>(j)] == k)
        out(i, j) = x(i, j);
  return out;
}

struct U1ModeSpectrum {
  std::map<int, ComplexMatrix> components;
  std::map<int, double> norms;
};

/// All reachable modes -spread..spread with their trace norms.
inline U1ModeSpectrum u1_mode_spectrum(const ComplexMatrix& x, const U1Representation& rep) {
  detail::require_rep_dim(x, rep, "u1_mode_spectrum");
  U1ModeSpectrum s;
  for (int k = -rep.spread(); k <= rep.spread(); ++k) {
    ComplexMatrix c = u1_mode_project(x, rep, k);
    s.norms[k] = trace_norm(c);
    s.components.emplace(k, std::move(c));
  }
  return s;
}

inline std::set<int> u1_modes_of(const ComplexMatrix& x, const U1Representation& rep,
                                 double tol = kDefaultTol) {
  std::set<int> modes;
  for (const auto& [k, n] : u1_mode_spectrum(x, rep).norms)
    if (n > tol) modes.insert(k);
  return modes;
}

/// Asymmetry monotone ||rho^(k)||_1.
inline double u1_mode_monotone(const DensityMatrix& rho, const U1Representation& rep, int k) {
  return trace_norm(u1_mode_project(rho.matrix(), rep, k));
}

/// Fourier coefficients p_k = int dtheta p(theta) exp(-i k theta) of a probability
/// density on the circle.
class FourierWeights {
 public:
  using Function = std::function<cplx(int)>;

  explicit FourierWeights(Function f) : f_(std::move(f)) {}

  cplx operator()(int k) const { return f_(k); }

  /// Haar measure: p_k = delta_{k,0}.
  static FourierWeights uniform() {
    return FourierWeights([](int k) { return k == 0 ? cplx(1.0) : cplx(0.0); });
  }

  /// Point mass at theta0.
  static FourierWeights delta(double theta0 = 0.0) {
    return FourierWeights([theta0](int k) { return std::exp(cplx(0.0, -k * theta0)); });
  }

  /// Weighted sum of point masses, given as (weight, angle) pairs.
  static FourierWeights delta_mixture(std::vector<std::pair<double, double>> atoms) {
    return FourierWeights([atoms = std::move(atoms)](int k) {
      cplx s = 0.0;
      for (const auto& [w, t] : atoms) s += w * std::exp(cplx(0.0, -k * t));
      return s;
    });
  }

  /// Wrapped Gaussian of width sigma centred at zero: p_k = exp(-k^2 sigma^2 / 2).
  static FourierWeights gaussian(double sigma) {
    return FourierWeights(
        [sigma](int k) { return cplx(std::exp(-0.5 * k * k * sigma * sigma), 0.0); });
  }

  /// Explicit coefficients; absent k are zero.
  static FourierWeights from_map(std::map<int, cplx> coeffs) {
    return FourierWeights([coeffs = std::move(coeffs)](int k) {
      auto it = coeffs.find(k);
      return it == coeffs.end() ? cplx(0.0) : it->second;
    });
  }

  /// Density sampled at n equispaced points on [-pi, pi); the rule is the
  /// trapezoidal rule for a periodic integrand. Samples are normalized to
  /// integrate to one.
  static FourierWeights from_density(const std::function<double(double)>& density, int n) {
    if (n < 2) throw InvalidInput("FourierWeights::from_density: need at least 2 samples");
    std::vector<double> theta(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      theta[static_cast<std::size_t>(i)] = -std::numbers::pi + 2.0 * std::numbers::pi * i / n;
      w[static_cast<std::size_t>(i)] = density(theta[static_cast<std::size_t>(i)]);
      if (w[static_cast<std::size_t>(i)] < 0.0)
        throw InvalidInput("FourierWeights::from_density: negative density sample");
      total += w[static_cast<std::size_t>(i)];
    }
    if (total <= 0.0) throw InvalidInput("FourierWeights::from_density: density integrates to 0");
    for (auto& x : w) x /= total;
    return FourierWeights([theta = std::move(theta), w = std::move(w)](int k) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::exp(cplx(0.0, -k * theta[i]));
      return s;
    });
  }

  /// Discrepancy between the n-sample and n/2-sample rules for |k| <= k_max;
  /// a practical error estimate for from_density.
  static double sampling_error(const std::function<double(double)>& density, int n, int k_max) {
    const auto fine = from_density(density, n);
    const auto coarse = from_density(density, n / 2);
    double err = 0.0;
    for (int k = -k_max; k <= k_max; ++k) err = std::max(err, std::abs(fine(k) - coarse(k)));
    return err;
  }

 private:
  Function f_;
};

/// sigma = int p(theta) U rho U^dagger = sum_k p_{-k} rho^(k).
inline DensityMatrix u1_weighted_twirl(const DensityMatrix& rho, const U1Representation& rep,
                                       const FourierWeights& weights, double tol = kDefaultTol) {
  detail::require_rep_dim(rho.matrix(), rep, "u1_weighted_twirl");
  if (std::abs(weights(0) - cplx(1.0)) > tol)
    throw InvalidInput("u1_weighted_twirl: p_0 must equal 1 for a probability density");
  ComplexMatrix sigma = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (int k = -rep.spread(); k <= rep.spread(); ++k) {
    const cplx p = weights(-k);
    if (std::abs(p) > 1.0 + tol)
      throw InvalidInput("u1_weighted_twirl: |p_k| exceeds 1 for k = " + std::to_string(-k));
    sigma += p * u1_mode_project(rho.matrix(), rep, k);
  }
  return DensityMatrix(sigma, std::max(tol, 1e-9));
}

struct U1TransitionBound {
  std::map<int, double> per_mode;  // modes with ||sigma^(k)|| > tol only
  double overall = 1.0;
  bool modes_contained = true;  // Modes(sigma) subset of Modes(rho)
};

/// Upper bounds on the success probability of rho -> sigma by a U(1)-covariant
/// operation: p ||sigma^(k)|| <= ||rho^(k)|| for every k.
inline U1TransitionBound u1_transition_bound(const DensityMatrix& rho, const DensityMatrix& sigma,
                                             const U1Representation& rep,
                                             double tol = kDefaultTol) {
  if (rho.dim() != sigma.dim()) throw DimensionError("u1_transition_bound: dimension mismatch");
  const auto sr = u1_mode_spectrum(rho.matrix(), rep);
  const auto ss = u1_mode_spectrum(sigma.matrix(), rep);
  U1TransitionBound b;
  for (const auto& [k, ns] : ss.norms) {
    if (ns <= tol) continue;
    const double nr = sr.norms.at(k);
    if (nr <= tol) b.modes_contained = false;
    const double bound = std::min(1.0, nr / ns);
    b.per_mode[k] = bound;
    b.overall = std::min(b.overall, bound);
  }
  if (!b.modes_contained) b.overall = 0.0;
  return b;
}

using Ensemble = std::vector<std::pair<DensityMatrix, double>>;

namespace detail {

inline void validate_ensemble(const Ensemble& ensemble, Eigen::Index dim, double tol) {
  double total = 0.0;
  for (const auto& [s, p] : ensemble) {
    if (p < -tol) throw InvalidInput("ensemble: negative probability");
    if (s.dim() != dim) throw DimensionError("ensemble: member dimension mismatch");
    total += p;
  }
  if (total > 1.0 + tol) throw InvalidInput("ensemble: probabilities sum to more than 1");
}

}  // namespace detail

struct U1EnsembleBound {
  std::map<int, double> residual;  // ||rho^(k)|| - sum_i p_i ||sigma_i^(k)||
  bool feasible = true;
};

inline U1EnsembleBound u1_ensemble_bound(const DensityMatrix& rho, const Ensemble& ensemble,
                                         const U1Representation& rep, double tol = kDefaultTol) {
  detail::validate_ensemble(ensemble, rho.dim(), tol);
  U1EnsembleBound b;
  for (const auto& [k, n] : u1_mode_spectrum(rho.matrix(), rep).norms) b.residual[k] = n;
  for (const auto& [s, p] : ensemble)
    for (const auto& [k, n] : u1_mode_spectrum(s.matrix(), rep).norms) b.residual[k] -= p * n;
  for (const auto& [k, r] : b.residual)
    if (r < -tol) b.feasible = false;
  return b;
}

/// (rho1 (x) rho2)^(j) = sum_k rho1^(k) (x) rho2^(j-k).
inline ComplexMatrix joint_mode_components(const ComplexMatrix& rho1, const U1Representation& rep1,
                                           const ComplexMatrix& rho2, const U1Representation& rep2,
                                           int j) {
  detail::require_rep_dim(rho1, rep1, "joint_mode_components");
  detail::require_rep_dim(rho2, rep2, "joint_mode_components");
  ComplexMatrix out = ComplexMatrix::Zero(rho1.rows() * rho2.rows(), rho1.cols() * rho2.cols());
  for (int k = -rep1.spread(); k <= rep1.spread(); ++k) {
    const int k2 = j - k;
    if (std::abs(k2) > rep2.spread()) continue;
    out += tensor_product(u1_mode_project(rho1, rep1, k), u1_mode_project(rho2, rep2, k2));
  }
  return out;
}

struct CoherentState {
  ComplexVector amplitudes;  // renormalized, indices 0..n_max
  double tail_probability;   // Poisson weight discarded beyond n_max
  bool tail_warning;         // tail_probability > 0.01
};

/// Default Fock cutoff ceil(|alpha|^2 + 10 |alpha|).
inline int default_n_max(cplx alpha) {
  const double a = std::abs(alpha);
  return std::max(1, static_cast<int>(std::ceil(a * a + 10.0 * a)));
}

inline CoherentState coherent_state(cplx alpha, int n_max) {
  if (n_max < 1) throw InvalidInput("coherent_state: n_max must be >= 1");
  const double a2 = std::norm(alpha);
  ComplexVector psi(n_max + 1);
  cplx term = std::exp(-0.5 * a2);
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) term *= alpha / std::sqrt(static_cast<double>(n));
    psi(n) = term;
  }
  // Upper Poisson tail summed directly to keep tiny tails accurate.
  double tail = 0.0;
  if (a2 > 0.0) {
    for (int n = n_max + 1;; ++n) {
      const double log_t = -a2 + n * std::log(a2) - std::lgamma(n + 1.0);
      const double t = std::exp(log_t);
      tail += t;
      if (n > a2 && t < tail * 1e-17) break;
      if (n > n_max + 100000) break;
    }
  }
  psi /= psi.norm();
  return {psi, tail, tail > 0.01};
}

/// State available to a party holding frame tau after averaging the joint
/// system over the misalignment distribution.
inline DensityMatrix alignment_accessible_state(const DensityMatrix& tau,
                                                const U1Representation& rep_rf,
                                                const DensityMatrix& rho,
                                                const U1Representation& rep_sys,
                                                const FourierWeights& weights,
                                                double tol = kDefaultTol) {
  detail::require_rep_dim(tau.matrix(), rep_rf, "alignment_accessible_state");
  detail::require_rep_dim(rho.matrix(), rep_sys, "alignment_accessible_state");
  DensityMatrix joint(tensor_product(tau.matrix(), rho.matrix()), std::max(tol, 1e-9));
  return u1_weighted_twirl(joint, u1_joint_rep(rep_rf, rep_sys), weights, tol);
}

}  // namespace asymmodes

#pragma once

// Irreducible tensor operator bases and (mu, m) mode projections.
//
// For a row sector r (spin j_r) and a column sector s (spin j_s) the ket-bra
// |r m_r><s m_s| transforms like |j_r m_r> (x) (-1)^(j_s - m_s) |j_s, -m_s>, so
//
//   T^(mu, alpha)_M = sum (-1)^(j_s - m_s) <j_r m_r; j_s -m_s | mu M> |r m_r><s m_s|
//
// with alpha enumerating the admissible (r, s) pairs. These operators are
// orthonormal and transform under X -> U X U^dagger with the same D^mu as
// wigner_D. For a single spin-j block every reduced matrix element <j||T^mu||j>
// comes out positive, which fixes the per-rank phase.

#include "asymmodes/core.hpp"
#include "asymmodes/su2.hpp"

#include <compare>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace asymmodes {

struct ModeLabel {
  HalfInteger mu;
  HalfInteger m;
  friend constexpr auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

namespace detail {

inline bool rank_admissible(HalfInteger jr, HalfInteger js, HalfInteger mu) {
  return mu.twice >= std::abs(jr.twice - js.twice) && mu.twice <= jr.twice + js.twice &&
         (jr.twice + js.twice - mu.twice) % 2 == 0;
}

/// Coefficient of |r m_r><s m_s| in T^(mu)_M for the pair (r, s).
inline double pair_coefficient(HalfInteger jr, HalfInteger mr, HalfInteger js, HalfInteger ms,
                               HalfInteger mu, HalfInteger M) {
  const double sign = ((js.twice - ms.twice) / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * clebsch_gordan(jr, mr, js, -ms, mu, M);
}

/// Visit every (mu, M) component of one sector pair; `f(mu, M, entries)` gets the
/// list of (row index, col index, coefficient) making up T^(mu)_M.
template <class F>
void for_each_pair_component(const Sector& r, const Sector& s, F&& f) {
  struct Entry {
    Eigen::Index row, col;
    double coef;
  };
  std::vector<Entry> entries;
  for (int mu_t = std::abs(r.j.twice - s.j.twice); mu_t <= r.j.twice + s.j.twice; mu_t += 2) {
    const auto mu = HalfInteger::from_twice(mu_t);
    for (const auto M : magnetic_numbers(mu)) {
      entries.clear();
      for (const auto mr : magnetic_numbers(r.j)) {
        const auto ms = mr - M;
        if (std::abs(ms.twice) > s.j.twice) continue;
        const double c = pair_coefficient(r.j, mr, s.j, ms, mu, M);
        if (c != 0.0)
          entries.push_back({r.indices[m_index(r.j, mr)], s.indices[m_index(s.j, ms)], c});
      }
      f(mu, M, entries);
    }
  }
}

}  // namespace detail

using ModeDecomposition = std::map<ModeLabel, ComplexMatrix>;

/// Every (mu, m) component of an operator from the column space to the row space.
/// Components sum back to x.
inline ModeDecomposition mode_decomposition(const ComplexMatrix& x, const std::vector<Sector>& rows,
                                            const std::vector<Sector>& cols) {
  ModeDecomposition out;
  for (const auto& r : rows)
    for (const auto& s : cols)
      detail::for_each_pair_component(r, s, [&](HalfInteger mu, HalfInteger M, const auto& entries) {
        cplx a = 0.0;
        for (const auto& e : entries) a += e.coef * x(e.row, e.col);
        auto it = out.find({mu, M});
        if (it == out.end()) it = out.emplace(ModeLabel{mu, M}, ComplexMatrix::Zero(x.rows(), x.cols())).first;
        for (const auto& e : entries) it->second(e.row, e.col) += a * e.coef;
      });
  return out;
}

/// Single (mu, m) component of an operator between sector layouts.
inline ComplexMatrix mode_component(const ComplexMatrix& x, const std::vector<Sector>& rows,
                                    const std::vector<Sector>& cols, HalfInteger mu, HalfInteger m) {
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  if (std::abs(m.twice) > mu.twice || (mu.twice - m.twice) % 2 != 0) return out;
  for (const auto& r : rows)
    for (const auto& s : cols) {
      if (!detail::rank_admissible(r.j, s.j, mu)) continue;
      cplx a = 0.0;
      std::vector<std::tuple<Eigen::Index, Eigen::Index, double>> entries;
      for (const auto mr : magnetic_numbers(r.j)) {
        const auto ms = mr - m;
        if (std::abs(ms.twice) > s.j.twice) continue;
        const double c = detail::pair_coefficient(r.j, mr, s.j, ms, mu, m);
        if (c == 0.0) continue;
        const auto row = r.indices[m_index(r.j, mr)], col = s.indices[m_index(s.j, ms)];
        entries.emplace_back(row, col, c);
        a += c * x(row, col);
      }
      for (const auto& [row, col, c] : entries) out(row, col) += a * c;
    }
  return out;
}

/// X^(mu, m) = sum_alpha T^(mu, alpha)_m tr(T^(mu, alpha)_m^dagger X), evaluated
/// sector by sector without materializing the basis.
inline ComplexMatrix so3_mode_project(const ComplexMatrix& x, const SU2Representation& rep,
                                      HalfInteger mu, HalfInteger m) {
  detail::require_square(x, "so3_mode_project");
  if (x.rows() != rep.dim())
    throw DimensionError("so3_mode_project: operator dimension " + std::to_string(x.rows()) +
                         " does not match representation dimension " + std::to_string(rep.dim()));
  const auto sec = rep.sectors();
  return mode_component(x, sec, sec, mu, m);
}

inline ModeDecomposition so3_mode_decomposition(const ComplexMatrix& x, const SU2Representation& rep) {
  detail::require_square(x, "so3_mode_decomposition");
  if (x.rows() != rep.dim()) throw DimensionError("so3_mode_decomposition: dimension mismatch");
  const auto sec = rep.sectors();
  return mode_decomposition(x, sec, sec);
}

struct TensorOperator {
  HalfInteger mu;
  HalfInteger m;
  int alpha = 0;
  ComplexMatrix op;
};

/// Orthonormal irreducible tensor operator basis of B(H) for an SU(2)
/// representation. Ordering: rank ascending, then alpha, then m = mu..-mu.
class TensorOperatorBasis {
 public:
  explicit TensorOperatorBasis(SU2Representation rep) : rep_(std::move(rep)) {
    const auto sec = rep_.sectors();
    const auto d = rep_.dim();
    std::map<HalfInteger, std::vector<std::vector<TensorOperator>>> by_rank;
    for (const auto& r : sec)
      for (const auto& s : sec) {
        std::map<HalfInteger, std::vector<TensorOperator>> multiplets;
        detail::for_each_pair_component(r, s, [&](HalfInteger mu, HalfInteger M, const auto& entries) {
          ComplexMatrix t = ComplexMatrix::Zero(d, d);
          for (const auto& e : entries) t(e.row, e.col) = e.coef;
          multiplets[mu].push_back({mu, M, 0, std::move(t)});
        });
        for (auto& [mu, ops] : multiplets) by_rank[mu].push_back(std::move(ops));
      }
    for (auto& [mu, list] : by_rank) {
      int alpha = 0;
      for (auto& ops : list) {
        for (auto& t : ops) {
          t.alpha = alpha;
          index_[{mu.twice, t.m.twice, alpha}] = ops_.size();
          ops_.push_back(std::move(t));
        }
        multiplicity_[mu] = ++alpha;
      }
    }
  }

  const SU2Representation& rep() const { return rep_; }
  Eigen::Index dim() const { return rep_.dim(); }
  std::size_t size() const { return ops_.size(); }
  const std::vector<TensorOperator>& ops() const { return ops_; }
  auto begin() const { return ops_.begin(); }
  auto end() const { return ops_.end(); }

  std::vector<HalfInteger> ranks() const {
    std::vector<HalfInteger> r;
    for (const auto& [mu, n] : multiplicity_) r.push_back(mu);
    return r;
  }

  int multiplicity(HalfInteger mu) const {
    auto it = multiplicity_.find(mu);
    return it == multiplicity_.end() ? 0 : it->second;
  }

  bool has(HalfInteger mu, HalfInteger m, int alpha) const {
    return index_.count({mu.twice, m.twice, alpha}) != 0;
  }

  const ComplexMatrix& at(HalfInteger mu, HalfInteger m, int alpha = 0) const {
    auto it = index_.find({mu.twice, m.twice, alpha});
    if (it == index_.end())
      throw std::out_of_range("TensorOperatorBasis: no operator (" + mu.str() + ", " + m.str() +
                              ", " + std::to_string(alpha) + ")");
    return ops_[it->second].op;
  }

  std::size_t position(HalfInteger mu, HalfInteger m, int alpha) const {
    return index_.at({mu.twice, m.twice, alpha});
  }

  /// Columns are vec(T) in basis order; unitary for a complete basis.
  ComplexMatrix vectorized() const {
    ComplexMatrix w(dim() * dim(), static_cast<Eigen::Index>(ops_.size()));
    for (std::size_t i = 0; i < ops_.size(); ++i) w.col(static_cast<Eigen::Index>(i)) = vec(ops_[i].op);
    return w;
  }

  /// Each (mu, alpha) multiplet viewed as a spin-mu sector of the coordinate
  /// space x_i = tr(T_i^dagger X).
  std::vector<Sector> coordinate_sectors() const {
    std::vector<Sector> out;
    for (const auto& [mu, n] : multiplicity_)
      for (int a = 0; a < n; ++a) {
        Sector s{mu, {}};
        for (const auto m : magnetic_numbers(mu))
          s.indices.push_back(static_cast<Eigen::Index>(position(mu, m, a)));
        out.push_back(std::move(s));
      }
    return out;
  }

  /// Projection built from the materialized basis; agrees with so3_mode_project.
  ComplexMatrix project(const ComplexMatrix& x, HalfInteger mu, HalfInteger m) const {
    ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
    for (int a = 0; a < multiplicity(mu); ++a) {
      if (!has(mu, m, a)) continue;
      const auto& t = at(mu, m, a);
      out += t * hs_inner(t, x);
    }
    return out;
  }

 private:
  SU2Representation rep_;
  std::vector<TensorOperator> ops_;
  std::map<std::tuple<int, int, int>, std::size_t> index_;
  std::map<HalfInteger, int> multiplicity_;
};

inline TensorOperatorBasis tensor_basis_general(const SU2Representation& rep) {
  return TensorOperatorBasis(rep);
}

inline TensorOperatorBasis tensor_basis_spin_j(HalfInteger j) {
  return TensorOperatorBasis(SU2Representation::spin(j));
}

/// max |W^dagger W - I| over the vectorized basis.
inline double basis_orthonormality_deviation(const TensorOperatorBasis& basis) {
  const ComplexMatrix w = basis.vectorized();
  return max_abs(w.adjoint() * w - identity(w.cols()));
}

/// max over multiplets of || U T_m U^dagger - sum_m' D^mu_{m'm} T_m' ||_HS.
inline double basis_covariance_residual(const TensorOperatorBasis& basis, const EulerAngles& g) {
  const ComplexMatrix u = basis.rep().unitary(g);
  double worst = 0.0;
  for (const auto mu : basis.ranks()) {
    const ComplexMatrix dmu = wigner_D(mu, g.alpha, g.beta, g.gamma);
    const auto ms = magnetic_numbers(mu);
    for (int a = 0; a < basis.multiplicity(mu); ++a)
      for (std::size_t q = 0; q < ms.size(); ++q) {
        ComplexMatrix diff = u * basis.at(mu, ms[q], a) * u.adjoint();
        for (std::size_t r = 0; r < ms.size(); ++r)
          diff -= dmu(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q)) * basis.at(mu, ms[r], a);
        worst = std::max(worst, hs_norm(diff));
      }
  }
  return worst;
}

struct ConjugationReport {
  double max_residual = 0.0;
  bool passed = true;
};

/// Checks that every T^dagger lies in the span of its own rank (SU(2): the
/// conjugate irrep of mu is mu).
inline ConjugationReport hermitian_conjugate_mode_check(const TensorOperatorBasis& basis,
                                                        double tol = kDefaultTol) {
  ConjugationReport rep;
  for (const auto& t : basis) {
    const ComplexMatrix tdag = t.op.adjoint();
    ComplexMatrix proj = ComplexMatrix::Zero(basis.dim(), basis.dim());
    for (const auto& s : basis)
      if (s.mu == t.mu) proj += s.op * hs_inner(s.op, tdag);
    rep.max_residual = std::max(rep.max_residual, hs_norm(tdag - proj));
  }
  rep.passed = rep.max_residual <= tol;
  return rep;
}

}  // namespace asymmodes

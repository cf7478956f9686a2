#pragma once

// SU(2) representation machinery. Basis convention for every spin-j block:
// index 0 is m = j, index 2j is m = -j, so L_z = diag(j, ..., -j) and L_x is
// real. Clebsch-Gordan coefficients use the Condon-Shortley phase.

#include "asymmodes/core.hpp"

#include <cmath>
#include <compare>
#include <numbers>
#include <string>
#include <vector>

namespace asymmodes {

/// A value in (1/2)Z stored as twice its value. Used for spins j, ranks mu and
/// magnetic numbers m.
struct HalfInteger {
  int twice = 0;

  constexpr HalfInteger() = default;
  constexpr HalfInteger(int integer) : twice(2 * integer) {}  // NOLINT: implicit by design of j = 1
  static constexpr HalfInteger from_twice(int t) {
    HalfInteger h;
    h.twice = t;
    return h;
  }
  /// Throws unless 2x is an integer.
  static HalfInteger from_double(double x) {
    const double t = 2.0 * x;
    if (std::abs(t - std::round(t)) > 1e-12)
      throw InvalidInput("not a half-integer: " + std::to_string(x));
    return from_twice(static_cast<int>(std::lround(t)));
  }

  constexpr double value() const { return 0.5 * twice; }
  constexpr bool is_integer() const { return twice % 2 == 0; }
  /// Dimension 2j+1 of the spin-j irrep.
  constexpr int dim() const { return twice + 1; }

  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;
  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) {
    return from_twice(a.twice + b.twice);
  }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) {
    return from_twice(a.twice - b.twice);
  }
  constexpr HalfInteger operator-() const { return from_twice(-twice); }

  std::string str() const {
    if (is_integer()) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  }
};

inline HalfInteger abs(HalfInteger h) { return HalfInteger::from_twice(std::abs(h.twice)); }

/// Magnetic numbers m = j, j-1, ..., -j in basis order.
inline std::vector<HalfInteger> magnetic_numbers(HalfInteger j) {
  std::vector<HalfInteger> ms;
  for (int t = j.twice; t >= -j.twice; t -= 2) ms.push_back(HalfInteger::from_twice(t));
  return ms;
}

/// Basis index of m inside a spin-j block.
inline int m_index(HalfInteger j, HalfInteger m) { return (j.twice - m.twice) / 2; }

struct AngularMomentumOps {
  HalfInteger j;
  ComplexMatrix Lz, Lplus, Lminus, L2, Lx, Ly;
};

inline AngularMomentumOps angular_momentum(HalfInteger j) {
  if (j.twice < 0) throw InvalidInput("angular_momentum: j must be >= 0");
  const int d = j.dim();
  const double jv = j.value();
  AngularMomentumOps ops;
  ops.j = j;
  ops.Lz = ComplexMatrix::Zero(d, d);
  ops.Lplus = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = jv - i;
    ops.Lz(i, i) = m;
    if (i > 0) ops.Lplus(i - 1, i) = std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
  }
  ops.Lminus = ops.Lplus.adjoint();
  ops.Lx = 0.5 * (ops.Lplus + ops.Lminus);
  ops.Ly = cplx(0.0, -0.5) * (ops.Lplus - ops.Lminus);
  ops.L2 = jv * (jv + 1.0) * identity(d);
  return ops;
}

namespace detail {

inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

/// (a.twice + b.twice ...)/2 as an integer; the caller guarantees parity.
inline int half_sum(int twice_sum) { return twice_sum / 2; }

}  // namespace detail

/// Condon-Shortley Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> by the Racah
/// sum in log space. Returns 0 when a selection rule fails; throws when an m is
/// not congruent to its j.
inline double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2,
                             HalfInteger J, HalfInteger M) {
  if (j1.twice < 0 || j2.twice < 0 || J.twice < 0)
    throw InvalidInput("clebsch_gordan: negative angular momentum");
  if ((j1.twice - m1.twice) % 2 != 0 || (j2.twice - m2.twice) % 2 != 0 ||
      (J.twice - M.twice) % 2 != 0)
    throw InvalidInput("clebsch_gordan: m is not congruent to j mod 1");
  if (M.twice != m1.twice + m2.twice) return 0.0;
  if (std::abs(m1.twice) > j1.twice || std::abs(m2.twice) > j2.twice ||
      std::abs(M.twice) > J.twice)
    return 0.0;
  if (J.twice > j1.twice + j2.twice || J.twice < std::abs(j1.twice - j2.twice)) return 0.0;
  if ((j1.twice + j2.twice + J.twice) % 2 != 0) return 0.0;

  using detail::half_sum;
  using detail::log_factorial;
  const int a = half_sum(J.twice + j1.twice - j2.twice);
  const int b = half_sum(J.twice - j1.twice + j2.twice);
  const int c = half_sum(j1.twice + j2.twice - J.twice);
  const int s = half_sum(j1.twice + j2.twice + J.twice);
  const int jpm = half_sum(J.twice + M.twice), jmm = half_sum(J.twice - M.twice);
  const int j1m = half_sum(j1.twice - m1.twice), j1p = half_sum(j1.twice + m1.twice);
  const int j2m = half_sum(j2.twice - m2.twice), j2p = half_sum(j2.twice + m2.twice);

  const double log_pref =
      0.5 * (std::log(J.twice + 1.0) + log_factorial(a) + log_factorial(b) + log_factorial(c) -
             log_factorial(s + 1) + log_factorial(jpm) + log_factorial(jmm) +
             log_factorial(j1m) + log_factorial(j1p) + log_factorial(j2m) + log_factorial(j2p));

  const int d1 = half_sum(J.twice - j2.twice + m1.twice);   // J - j2 + m1
  const int d2 = half_sum(J.twice - j1.twice - m2.twice);   // J - j1 - m2
  const int k_min = std::max({0, -d1, -d2});
  const int k_max = std::min({c, j1m, j2p});
  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double log_den = log_factorial(k) + log_factorial(c - k) + log_factorial(j1m - k) +
                           log_factorial(j2p - k) + log_factorial(d1 + k) + log_factorial(d2 + k);
    const double term = std::exp(log_pref - log_den);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

/// Wigner small-d matrix d^j_{m'm}(beta) = <j m'| exp(-i beta L_y) |j m>.
inline Eigen::MatrixXd wigner_small_d(HalfInteger j, double beta) {
  const int d = j.dim();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  using detail::log_factorial;
  for (int r = 0; r < d; ++r) {
    for (int q = 0; q < d; ++q) {
      const int jpmp = j.twice - r, jmmp = r;  // j+m', j-m' for m' = j - r
      const int jpm = j.twice - q, jmm = q;
      const int dm = (jpmp - jpm);               // m' - m
      const double log_root =
          0.5 * (log_factorial(jpmp) + log_factorial(jmmp) + log_factorial(jpm) + log_factorial(jmm));
      double sum = 0.0;
      for (int k = std::max(0, -dm); k <= std::min(jpm, jmmp); ++k) {
        const double log_den =
            log_factorial(jpm - k) + log_factorial(k) + log_factorial(dm + k) + log_factorial(jmmp - k);
        const int pc = j.twice - dm - 2 * k;  // power of cos(beta/2)
        const int ps = dm + 2 * k;            // power of sin(beta/2)
        const double term = std::exp(log_root - log_den) * std::pow(c, pc) * std::pow(s, ps);
        sum += ((dm + k) % 2 == 0) ? term : -term;
      }
      out(r, q) = sum;
    }
  }
  return out;
}

/// Wigner D^j(alpha, beta, gamma) for zyz Euler angles:
/// D_{m'm} = exp(-i m' alpha) d_{m'm}(beta) exp(-i m gamma).
inline ComplexMatrix wigner_D(HalfInteger j, double alpha, double beta, double gamma) {
  const Eigen::MatrixXd small = wigner_small_d(j, beta);
  const int d = j.dim();
  ComplexMatrix out(d, d);
  for (int r = 0; r < d; ++r) {
    const double mp = j.value() - r;
    for (int q = 0; q < d; ++q) {
      const double m = j.value() - q;
      out(r, q) = std::exp(cplx(0.0, -mp * alpha - m * gamma)) * small(r, q);
    }
  }
  return out;
}

/// zyz Euler angles of a rotation.
struct EulerAngles {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
};

/// Hermitian generators (L_x, L_y, L_z) of a unitary SU(2) action on some basis.
struct Su2Generators {
  ComplexMatrix x, y, z;

  Eigen::Index dim() const { return z.rows(); }

  ComplexMatrix along(double nx, double ny, double nz) const { return nx * x + ny * y + nz * z; }

  /// exp(-i alpha Lz) exp(-i beta Ly) exp(-i gamma Lz).
  ComplexMatrix unitary(const EulerAngles& g) const {
    return unitary_exp(z, g.alpha) * unitary_exp(y, g.beta) * unitary_exp(z, g.gamma);
  }
};

/// Generators of the tensor-product action in kron ordering.
inline Su2Generators product_generators(const Su2Generators& a, const Su2Generators& b) {
  const ComplexMatrix ia = identity(a.dim()), ib = identity(b.dim());
  return {tensor_product(a.x, ib) + tensor_product(ia, b.x),
          tensor_product(a.y, ib) + tensor_product(ia, b.y),
          tensor_product(a.z, ib) + tensor_product(ia, b.z)};
}

/// One irreducible copy inside a representation: its spin and the basis index of
/// each m = j..-j.
struct Sector {
  HalfInteger j;
  std::vector<Eigen::Index> indices;
};

/// Direct sum of spin-j irreps with multiplicities, U(g) = (+) D^j(g) (x) I_mult.
/// Within a block the basis index is offset + m_index * mult + copy.
class SU2Representation {
 public:
  struct Block {
    HalfInteger j;
    int mult = 1;
    friend bool operator==(const Block&, const Block&) = default;
  };

  SU2Representation() = default;
  explicit SU2Representation(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw InvalidInput("SU2Representation: no blocks");
    for (const auto& b : blocks_) {
      if (b.j.twice < 0) throw InvalidInput("SU2Representation: negative spin");
      if (b.mult < 1) throw InvalidInput("SU2Representation: multiplicity must be positive");
    }
  }

  static SU2Representation spin(HalfInteger j) { return SU2Representation({{j, 1}}); }

  const std::vector<Block>& blocks() const { return blocks_; }

  Eigen::Index dim() const {
    Eigen::Index d = 0;
    for (const auto& b : blocks_) d += static_cast<Eigen::Index>(b.mult) * b.j.dim();
    return d;
  }

  HalfInteger max_spin() const {
    HalfInteger m;
    for (const auto& b : blocks_) m = std::max(m, b.j);
    return m;
  }

  bool is_single_irrep() const { return blocks_.size() == 1 && blocks_.front().mult == 1; }

  std::vector<Sector> sectors() const {
    std::vector<Sector> out;
    Eigen::Index offset = 0;
    for (const auto& b : blocks_) {
      for (int copy = 0; copy < b.mult; ++copy) {
        Sector s{b.j, {}};
        for (int mi = 0; mi < b.j.dim(); ++mi) s.indices.push_back(offset + mi * b.mult + copy);
        out.push_back(std::move(s));
      }
      offset += static_cast<Eigen::Index>(b.mult) * b.j.dim();
    }
    return out;
  }

  Su2Generators generators() const {
    const auto d = dim();
    Su2Generators g{ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d)};
    for (const auto& s : sectors()) {
      const auto ops = angular_momentum(s.j);
      for (int r = 0; r < s.j.dim(); ++r)
        for (int q = 0; q < s.j.dim(); ++q) {
          g.x(s.indices[r], s.indices[q]) = ops.Lx(r, q);
          g.y(s.indices[r], s.indices[q]) = ops.Ly(r, q);
          g.z(s.indices[r], s.indices[q]) = ops.Lz(r, q);
        }
    }
    return g;
  }

  ComplexMatrix unitary(const EulerAngles& g) const {
    const auto d = dim();
    ComplexMatrix u = ComplexMatrix::Zero(d, d);
    for (const auto& s : sectors()) {
      const ComplexMatrix dj = wigner_D(s.j, g.alpha, g.beta, g.gamma);
      for (int r = 0; r < s.j.dim(); ++r)
        for (int q = 0; q < s.j.dim(); ++q) u(s.indices[r], s.indices[q]) = dj(r, q);
    }
    return u;
  }

  friend bool operator==(const SU2Representation&, const SU2Representation&) = default;

 private:
  std::vector<Block> blocks_;
};

/// Coupled form of a tensor product: `rep` lists every coupled irrep (one block
/// per J, multiplicity 1) and `isometry` holds the coupled basis vectors as
/// columns in the kron-ordered product basis.
struct CoupledProduct {
  SU2Representation rep;
  ComplexMatrix isometry;
};

inline CoupledProduct couple(const SU2Representation& a, const SU2Representation& b) {
  const auto sa = a.sectors(), sb = b.sectors();
  const Eigen::Index db = b.dim();
  std::vector<SU2Representation::Block> blocks;
  ComplexMatrix v = ComplexMatrix::Zero(a.dim() * db, a.dim() * db);
  Eigen::Index col = 0;
  for (const auto& x : sa)
    for (const auto& y : sb)
      for (int jt = x.j.twice + y.j.twice; jt >= std::abs(x.j.twice - y.j.twice); jt -= 2) {
        const auto J = HalfInteger::from_twice(jt);
        blocks.push_back({J, 1});
        for (const auto M : magnetic_numbers(J)) {
          for (const auto m1 : magnetic_numbers(x.j)) {
            const auto m2 = M - m1;
            if (std::abs(m2.twice) > y.j.twice) continue;
            const double c = clebsch_gordan(x.j, m1, y.j, m2, J, M);
            v(x.indices[m_index(x.j, m1)] * db + y.indices[m_index(y.j, m2)], col) = c;
          }
          ++col;
        }
      }
  return {SU2Representation(std::move(blocks)), std::move(v)};
}

}  // namespace asymmodes

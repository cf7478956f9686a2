#pragma once

// Dense complex operators, density matrices, superoperators in Liouville form
// and the norms every other module consumes.
//
// Vectorization is row-stacking throughout: vec(X)[i*cols + j] = X(i, j).
// Under that convention vec(A X B) = (A kron B^T) vec(X).

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace asymmodes {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-10;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols())
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                               const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(what) + ": shape mismatch");
}

}  // namespace detail

inline ComplexMatrix identity(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

/// Hilbert-Schmidt inner product tr(a^dagger b).
inline cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_shape(a, b, "hs_inner");
  return (a.conjugate().cwiseProduct(b)).sum();
}

inline double hs_norm(const ComplexMatrix& a) { return a.norm(); }

inline double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTol) {
  return a.rows() == a.cols() && max_abs(a - a.adjoint()) <= tol;
}

/// Eigenvalues of the Hermitian part (a + a^dagger)/2, ascending.
inline RealVector hermitian_eigenvalues(const ComplexMatrix& a) {
  detail::require_square(a, "hermitian_eigenvalues");
  ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline RealVector singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return RealVector();
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

/// Trace norm tr sqrt(a^dagger a), the sum of singular values.
inline double trace_norm(const ComplexMatrix& a) {
  detail::require_square(a, "trace_norm");
  if (a.size() == 0) return 0.0;
  if (is_hermitian(a, 0.0)) return hermitian_eigenvalues(a).cwiseAbs().sum();
  return singular_values(a).sum();
}

inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

enum class Subsystem { A, B };

/// Reduced operator on the kept factor of H_A (x) H_B.
inline ComplexMatrix partial_trace(const ComplexMatrix& x, Eigen::Index dim_a,
                                   Eigen::Index dim_b, Subsystem keep) {
  detail::require_square(x, "partial_trace");
  if (dim_a <= 0 || dim_b <= 0 || x.rows() != dim_a * dim_b)
    throw DimensionError("partial_trace: operator dimension " + std::to_string(x.rows()) +
                         " does not factor as " + std::to_string(dim_a) + "*" +
                         std::to_string(dim_b));
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (Eigen::Index i = 0; i < dim_a; ++i)
      for (Eigen::Index j = 0; j < dim_a; ++j)
        out(i, j) = x.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Eigen::Index i = 0; i < dim_a; ++i) out += x.block(i * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

inline ComplexVector vec(const ComplexMatrix& x) {
  ComplexVector v(x.size());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
  return v;
}

inline ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw DimensionError("unvec: length mismatch");
  ComplexMatrix x(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = v(i * cols + j);
  return x;
}

/// Validated density operator: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, double tol = kDefaultTol) : m_(std::move(m)) {
    detail::require_square(m_, "DensityMatrix");
    if (m_.rows() == 0) throw DimensionError("DensityMatrix: empty matrix");
    if (!is_hermitian(m_, tol)) throw InvalidInput("DensityMatrix: matrix is not Hermitian");
    if (std::abs(m_.trace() - cplx(1.0)) > tol)
      throw InvalidInput("DensityMatrix: trace is not 1");
    if (hermitian_eigenvalues(m_).minCoeff() < -tol)
      throw InvalidInput("DensityMatrix: matrix is not positive semidefinite");
  }

  static DensityMatrix pure(const ComplexVector& psi, double tol = kDefaultTol) {
    ComplexVector n = psi / psi.norm();
    return DensityMatrix(n * n.adjoint(), tol);
  }

  static DensityMatrix maximally_mixed(Eigen::Index d) {
    return DensityMatrix(identity(d) / static_cast<double>(d));
  }

  Eigen::Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  operator const ComplexMatrix&() const { return m_; }

 private:
  ComplexMatrix m_;
};

/// Linear map B(C^in_dim) -> B(C^out_dim) stored as a Liouville matrix acting on
/// row-stacked operators.
class Superoperator {
 public:
  Superoperator(Eigen::Index in_dim, Eigen::Index out_dim, ComplexMatrix liouville)
      : in_(in_dim), out_(out_dim), l_(std::move(liouville)) {
    if (in_ <= 0 || out_ <= 0) throw DimensionError("Superoperator: dimensions must be positive");
    if (l_.rows() != out_ * out_ || l_.cols() != in_ * in_)
      throw DimensionError("Superoperator: Liouville matrix has shape " +
                           std::to_string(l_.rows()) + "x" + std::to_string(l_.cols()) +
                           ", expected " + std::to_string(out_ * out_) + "x" +
                           std::to_string(in_ * in_));
  }

  static Superoperator identity(Eigen::Index d) {
    return Superoperator(d, d, ComplexMatrix::Identity(d * d, d * d));
  }

  static Superoperator zero(Eigen::Index in_dim, Eigen::Index out_dim) {
    return Superoperator(in_dim, out_dim,
                         ComplexMatrix::Zero(out_dim * out_dim, in_dim * in_dim));
  }

  /// Conjugation X -> u X u^dagger.
  static Superoperator conjugation(const ComplexMatrix& u) {
    return Superoperator(u.cols(), u.rows(), tensor_product(u, ComplexMatrix(u.conjugate())));
  }

  Eigen::Index in_dim() const { return in_; }
  Eigen::Index out_dim() const { return out_; }
  const ComplexMatrix& liouville() const { return l_; }

 private:
  Eigen::Index in_;
  Eigen::Index out_;
  ComplexMatrix l_;
};

inline ComplexMatrix apply_superop(const Superoperator& e, const ComplexMatrix& x) {
  if (x.rows() != e.in_dim() || x.cols() != e.in_dim())
    throw DimensionError("apply_superop: operator dimension " + std::to_string(x.rows()) +
                         " does not match input dimension " + std::to_string(e.in_dim()));
  return unvec(e.liouville() * vec(x), e.out_dim(), e.out_dim());
}

/// second o first.
inline Superoperator compose(const Superoperator& second, const Superoperator& first) {
  if (first.out_dim() != second.in_dim()) throw DimensionError("compose: dimension mismatch");
  return Superoperator(first.in_dim(), second.out_dim(), second.liouville() * first.liouville());
}

inline Superoperator operator+(const Superoperator& a, const Superoperator& b) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim())
    throw DimensionError("Superoperator sum: dimension mismatch");
  return Superoperator(a.in_dim(), a.out_dim(), a.liouville() + b.liouville());
}

struct KrausChannel {
  Superoperator channel;
  bool trace_preserving;
  double trace_preservation_residual;  // max |sum K^dagger K - I|
};

inline KrausChannel channel_from_kraus(const std::vector<ComplexMatrix>& kraus,
                                       double tol = kDefaultTol) {
  if (kraus.empty()) throw InvalidInput("channel_from_kraus: empty Kraus list");
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  ComplexMatrix l = ComplexMatrix::Zero(rows * rows, cols * cols);
  ComplexMatrix kk = ComplexMatrix::Zero(cols, cols);
  for (const auto& k : kraus) {
    if (k.rows() != rows || k.cols() != cols)
      throw DimensionError("channel_from_kraus: Kraus operators differ in shape");
    l += tensor_product(k, ComplexMatrix(k.conjugate()));
    kk += k.adjoint() * k;
  }
  const double residual = max_abs(kk - identity(cols));
  return {Superoperator(cols, rows, std::move(l)), residual <= tol, residual};
}

/// Positive operator-valued measure with outcome labels.
class POVM {
 public:
  POVM(std::vector<ComplexMatrix> elements, std::vector<std::string> labels = {},
       double tol = kDefaultTol)
      : elements_(std::move(elements)), labels_(std::move(labels)) {
    if (elements_.empty()) throw InvalidInput("POVM: no elements");
    if (labels_.empty())
      for (std::size_t i = 0; i < elements_.size(); ++i) labels_.push_back(std::to_string(i));
    if (labels_.size() != elements_.size()) throw InvalidInput("POVM: label count mismatch");
    const auto d = elements_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& m : elements_) {
      detail::require_square(m, "POVM");
      if (m.rows() != d) throw DimensionError("POVM: elements differ in dimension");
      if (!is_hermitian(m, tol)) throw InvalidInput("POVM: element is not Hermitian");
      if (hermitian_eigenvalues(m).minCoeff() < -tol)
        throw InvalidInput("POVM: element is not positive semidefinite");
      sum += m;
    }
    if (max_abs(sum - identity(d)) > tol) throw InvalidInput("POVM: elements do not sum to identity");
  }

  Eigen::Index dim() const { return elements_.front().rows(); }
  std::size_t size() const { return elements_.size(); }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<ComplexMatrix> elements_;
  std::vector<std::string> labels_;
};

/// Principal square root of a positive semidefinite Hermitian matrix.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (a + a.adjoint()));
  RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

/// exp(-i t h) for Hermitian h.
inline ComplexMatrix unitary_exp(const ComplexMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
  ComplexVector ph(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < ph.size(); ++i)
    ph(i) = std::exp(cplx(0.0, -t * es.eigenvalues()(i)));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace asymmodes

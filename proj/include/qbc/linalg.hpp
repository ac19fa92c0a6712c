#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qbc {

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

// Construction-time tolerances shared across the dense types.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kEigenvalueClampTol = 1e-10;  // [-tol, 0) clamps to 0, below is an error
inline constexpr double kUnitTraceTol = 1e-10;

namespace detail {

template <typename Real>
Real log2_of(Real x) {
  return std::log2(x);
}

// Clamp eigenvalue noise: values in [-1e-10, 0) become 0, anything lower is invalid input.
template <typename Real>
RealVector<Real> clamp_spectrum(RealVector<Real> v, const char* what) {
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] < Real(0)) {
      if (v[i] < -Real(kEigenvalueClampTol)) {
        std::ostringstream os;
        os << what << ": eigenvalue " << v[i] << " below -1e-10";
        throw std::invalid_argument(os.str());
      }
      v[i] = Real(0);
    }
  }
  return v;
}

}  // namespace detail

/// Dense complex Hermitian operator. Hermiticity is checked at construction
/// (entrywise tolerance 1e-12) and the stored matrix is exactly symmetrized.
/// Matrices built from a real diagonal keep a flag so spectral routines can
/// bypass the dense eigensolver.
template <typename Real = double>
class HermitianMatrix {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = ComplexMatrix<Real>;

  explicit HermitianMatrix(Matrix m) {
    if (m.rows() != m.cols()) {
      throw std::invalid_argument("HermitianMatrix: matrix is not square");
    }
    const Real dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(dev <= Real(kHermitianTol))) {
      std::ostringstream os;
      os << "HermitianMatrix: hermiticity violated by " << dev;
      throw std::invalid_argument(os.str());
    }
    mat_ = ((m + m.adjoint()) / Real(2)).eval();
    diagonal_ = false;
  }

  static HermitianMatrix Diagonal(RealVector<Real> d) {
    HermitianMatrix h;
    h.mat_ = d.template cast<Scalar>().asDiagonal();
    h.diagonal_ = true;
    return h;
  }

  static HermitianMatrix Zero(Index dim) { return Diagonal(RealVector<Real>::Zero(dim)); }

  static HermitianMatrix Identity(Index dim) { return Diagonal(RealVector<Real>::Ones(dim)); }

  Index dim() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }
  bool is_diagonal() const { return diagonal_; }

  RealVector<Real> diagonal() const { return mat_.diagonal().real(); }
  Real trace() const { return mat_.trace().real(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const {
    return from_parts(mat_ + o.mat_, diagonal_ && o.diagonal_);
  }
  HermitianMatrix operator-(const HermitianMatrix& o) const {
    return from_parts(mat_ - o.mat_, diagonal_ && o.diagonal_);
  }
  friend HermitianMatrix operator*(Real s, const HermitianMatrix& h) {
    return from_parts(s * h.mat_, h.diagonal_);
  }

 private:
  HermitianMatrix() = default;
  static HermitianMatrix from_parts(Matrix m, bool diag) {
    HermitianMatrix h;
    h.mat_ = std::move(m);
    h.diagonal_ = diag;
    return h;
  }

  Matrix mat_;
  bool diagonal_ = false;
};

/// Eigendecomposition with eigenvalues in descending order; ties keep the
/// solver's index order. Columns of `eigenvectors` are the matching basis.
template <typename Real = double>
struct Spectrum {
  RealVector<Real> eigenvalues;
  ComplexMatrix<Real> eigenvectors;
};

template <typename Real>
Spectrum<Real> eig_hermitian(const HermitianMatrix<Real>& h) {
  const Index n = h.dim();
  Spectrum<Real> s;
  s.eigenvalues.resize(n);
  s.eigenvectors = ComplexMatrix<Real>::Zero(n, n);

  if (h.is_diagonal()) {
    RealVector<Real> d = h.diagonal();
    std::vector<Index> order(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return d[a] > d[b]; });
    for (Index i = 0; i < n; ++i) {
      s.eigenvalues[i] = d[order[static_cast<std::size_t>(i)]];
      s.eigenvectors(order[static_cast<std::size_t>(i)], i) = Real(1);
    }
    return s;
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    const Real offdiag =
        (h.matrix() - ComplexMatrix<Real>(h.matrix().diagonal().asDiagonal())).norm();
    std::ostringstream os;
    os << "eig_hermitian: solver did not converge (off-diagonal Frobenius norm " << offdiag
       << ")";
    throw std::runtime_error(os.str());
  }
  // Eigen returns ascending order.
  s.eigenvalues = solver.eigenvalues().reverse();
  s.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return s;
}

/// Trace norm of a Hermitian operator: sum of absolute eigenvalues.
template <typename Real>
Real trace_norm(const HermitianMatrix<Real>& a) {
  if (a.is_diagonal()) {
    return a.diagonal().cwiseAbs().sum();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(a.matrix(),
                                                            Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("trace_norm: eigenvalue computation failed");
  }
  return solver.eigenvalues().cwiseAbs().sum();
}

/// Binary entropy in bits; endpoints map to 0 by the 0 log 0 = 0 convention.
template <typename Real>
Real binary_entropy(Real x) {
  if (x < Real(0)) {
    if (x < -Real(1e-12)) throw std::invalid_argument("binary_entropy: x < 0");
    x = Real(0);
  }
  if (x > Real(1)) {
    if (x > Real(1) + Real(1e-12)) throw std::invalid_argument("binary_entropy: x > 1");
    x = Real(1);
  }
  if (x == Real(0) || x == Real(1)) return Real(0);
  return -x * detail::log2_of(x) - (Real(1) - x) * detail::log2_of(Real(1) - x);
}

/// Density operator: Hermitian, positive semidefinite (eigenvalues above
/// -1e-10; rounding noise in [-1e-10, 0) is treated as 0), unit trace.
template <typename Real = double>
class DensityMatrix {
 public:
  using Matrix = typename HermitianMatrix<Real>::Matrix;

  explicit DensityMatrix(HermitianMatrix<Real> h) : h_(std::move(h)) { validate(); }

  explicit DensityMatrix(Matrix m) : h_(HermitianMatrix<Real>(std::move(m))) { validate(); }

  /// Diagonal state from a probability vector; clamps [-1e-10, 0) entries to 0.
  static DensityMatrix Diagonal(RealVector<Real> probs) {
    probs = detail::clamp_spectrum<Real>(std::move(probs), "DensityMatrix::Diagonal");
    return DensityMatrix(HermitianMatrix<Real>::Diagonal(std::move(probs)), ValidatedDiag{});
  }

  /// Computational-basis pure state |k><k| on `dim` dimensions.
  static DensityMatrix BasisState(Index dim, Index k) {
    RealVector<Real> p = RealVector<Real>::Zero(dim);
    p[k] = Real(1);
    return Diagonal(std::move(p));
  }

  /// Pure state |psi><psi| from a (normalized) state vector.
  static DensityMatrix Pure(const Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>& psi) {
    return DensityMatrix(HermitianMatrix<Real>(Matrix(psi * psi.adjoint())));
  }

  Index dim() const { return h_.dim(); }
  const Matrix& matrix() const { return h_.matrix(); }
  const HermitianMatrix<Real>& hermitian() const { return h_; }
  bool is_diagonal() const { return h_.is_diagonal(); }
  RealVector<Real> diagonal() const { return h_.diagonal(); }

 private:
  struct ValidatedDiag {};
  DensityMatrix(HermitianMatrix<Real> h, ValidatedDiag) : h_(std::move(h)) {
    check_trace();
  }

  void check_trace() const {
    const Real tr = h_.trace();
    if (std::abs(tr - Real(1)) > Real(kUnitTraceTol)) {
      std::ostringstream os;
      os << "DensityMatrix: trace " << tr << " is not 1";
      throw std::invalid_argument(os.str());
    }
  }

  void validate() const {
    check_trace();
    if (h_.is_diagonal()) {
      detail::clamp_spectrum<Real>(h_.diagonal(), "DensityMatrix");
      return;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h_.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("DensityMatrix: eigenvalue validation failed");
    }
    detail::clamp_spectrum<Real>(solver.eigenvalues(), "DensityMatrix");
  }

  HermitianMatrix<Real> h_;
};

/// Probabilities of a density matrix: descending clamped eigenvalues.
template <typename Real>
RealVector<Real> state_probabilities(const DensityMatrix<Real>& rho) {
  if (rho.is_diagonal()) {
    RealVector<Real> d = detail::clamp_spectrum<Real>(rho.diagonal(), "state_probabilities");
    std::sort(d.begin(), d.end(), std::greater<Real>());
    return d;
  }
  return detail::clamp_spectrum<Real>(eig_hermitian(rho.hermitian()).eigenvalues,
                                      "state_probabilities");
}

/// Von Neumann entropy in bits, S(rho) = -tr(rho log2 rho).
template <typename Real>
Real von_neumann_entropy(const DensityMatrix<Real>& rho) {
  const RealVector<Real> p = state_probabilities(rho);
  Real s = 0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] > Real(0)) s -= p[i] * detail::log2_of(p[i]);
  }
  return s;
}

/// Shannon entropy in bits of a nonnegative weight vector (0 log 0 = 0).
template <typename Real>
Real shannon_entropy(const RealVector<Real>& p) {
  Real s = 0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] > Real(0)) s -= p[i] * detail::log2_of(p[i]);
  }
  return s;
}

/// Squared fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. Commuting diagonal
/// inputs use the closed form (sum_i sqrt(p_i q_i))^2.
template <typename Real>
Real fidelity(const DensityMatrix<Real>& rho, const DensityMatrix<Real>& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  if (rho.is_diagonal() && sigma.is_diagonal()) {
    const RealVector<Real> p = detail::clamp_spectrum<Real>(rho.diagonal(), "fidelity");
    const RealVector<Real> q = detail::clamp_spectrum<Real>(sigma.diagonal(), "fidelity");
    Real acc = 0;
    for (Index i = 0; i < p.size(); ++i) acc += std::sqrt(p[i] * q[i]);
    return acc * acc;
  }
  const Spectrum<Real> s = eig_hermitian(rho.hermitian());
  RealVector<Real> lam = detail::clamp_spectrum<Real>(s.eigenvalues, "fidelity");
  const ComplexMatrix<Real> sqrt_rho =
      s.eigenvectors * lam.cwiseSqrt().template cast<std::complex<Real>>().asDiagonal() *
      s.eigenvectors.adjoint();
  ComplexMatrix<Real> inner = sqrt_rho * sigma.matrix() * sqrt_rho;
  inner = ((inner + inner.adjoint()) / Real(2)).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(inner, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("fidelity: eigenvalue computation failed");
  }
  const RealVector<Real> mu = detail::clamp_spectrum<Real>(solver.eigenvalues(), "fidelity");
  const Real root_sum = mu.cwiseSqrt().sum();
  return root_sum * root_sum;
}

/// Kronecker product with the row-major block convention
/// (A (x) B)[i*p+k, j*q+l] = A[i,j] B[k,l].
template <typename Real>
HermitianMatrix<Real> tensor(const HermitianMatrix<Real>& a, const HermitianMatrix<Real>& b) {
  if (a.is_diagonal() && b.is_diagonal()) {
    RealVector<Real> d(a.dim() * b.dim());
    const RealVector<Real> da = a.diagonal();
    const RealVector<Real> db = b.diagonal();
    for (Index i = 0; i < a.dim(); ++i)
      for (Index k = 0; k < b.dim(); ++k) d[i * b.dim() + k] = da[i] * db[k];
    return HermitianMatrix<Real>::Diagonal(std::move(d));
  }
  return HermitianMatrix<Real>(
      ComplexMatrix<Real>(Eigen::kroneckerProduct(a.matrix(), b.matrix())));
}

/// Weighted direct sum of blocks laid out in listed order.
template <typename Real>
HermitianMatrix<Real> direct_sum(std::span<const HermitianMatrix<Real>> blocks,
                                 std::span<const Real> weights) {
  if (blocks.size() != weights.size()) {
    throw std::invalid_argument("direct_sum: block/weight count mismatch");
  }
  Index total = 0;
  bool diag = true;
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    if (weights[l] < Real(0)) throw std::invalid_argument("direct_sum: negative weight");
    total += blocks[l].dim();
    diag = diag && blocks[l].is_diagonal();
  }
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(total, total);
  Index off = 0;
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    const Index d = blocks[l].dim();
    out.block(off, off, d, d) = weights[l] * blocks[l].matrix();
    off += d;
  }
  if (diag) {
    return HermitianMatrix<Real>::Diagonal(out.diagonal().real());
  }
  return HermitianMatrix<Real>(std::move(out));
}

template <typename Real>
HermitianMatrix<Real> direct_sum(const std::vector<HermitianMatrix<Real>>& blocks,
                                 const std::vector<Real>& weights) {
  return direct_sum(std::span<const HermitianMatrix<Real>>(blocks),
                    std::span<const Real>(weights));
}

using HermitianMatrixXd = HermitianMatrix<double>;
using DensityMatrixXd = DensityMatrix<double>;
using SpectrumXd = Spectrum<double>;

}  // namespace qbc

#include "otro/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace otro {

namespace {

void require_same_dims(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
  }
}

}  // namespace

CMatrix zeros(std::size_t d) {
  return CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

CMatrix identity(std::size_t d) {
  return CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

CMatrix unit(std::size_t d, std::size_t i, std::size_t j) {
  if (i >= d || j >= d) throw DimensionError("unit: index outside matrix");
  CMatrix m = zeros(d);
  m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return m;
}

CMatrix diagonal(std::span<const double> values) {
  CMatrix m = zeros(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
  }
  return m;
}

CMatrix adjoint(const CMatrix& m) { return m.adjoint(); }

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  require_same_dims(a, b, "hs_inner");
  // trace(a* b) = sum conj(a_ij) b_ij
  return (a.array().conjugate() * b.array()).sum();
}

double hs_norm(const CMatrix& m) { return m.norm(); }

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  // Largest eigenvalue of m* m; the smaller Gram side is enough.
  const CMatrix gram = m.rows() <= m.cols() ? CMatrix(m * m.adjoint())
                                            : CMatrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

bool is_hermitian(const CMatrix& m, Tolerance tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol.threshold(m.norm());
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m) {
  if (m.size() == 0) return {};
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

bool is_psd(const CMatrix& m, Tolerance tol) {
  if (!is_hermitian(m, tol)) return false;
  if (m.size() == 0) return true;
  const Eigen::VectorXd ev = hermitian_eigenvalues(m);
  const double norm = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
  return ev.minCoeff() >= -tol.threshold(norm);
}

bool approx_equal(const CMatrix& a, const CMatrix& b, Tolerance tol) {
  require_same_dims(a, b, "approx_equal");
  return (a - b).norm() <= tol.threshold(std::max(a.norm(), b.norm()));
}

CVector vec(const CMatrix& m) {
  CVector v(m.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(k++) = m(i, j);
  }
  return v;
}

CMatrix unvec(const CVector& v, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  if (v.size() != n * n) throw DimensionError("unvec: length is not d^2");
  CMatrix m(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = v(k++);
  }
  return m;
}

CMatrix block_diag(std::span<const CMatrix> blocks) {
  Eigen::Index total = 0;
  for (const auto& b : blocks) {
    if (b.rows() != b.cols()) throw DimensionError("block_diag: non-square block");
    total += b.rows();
  }
  CMatrix out = CMatrix::Zero(total, total);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

CMatrix block_matrix(std::span<const CMatrix> blocks, std::size_t n) {
  if (blocks.size() != n * n) throw DimensionError("block_matrix: need n*n blocks");
  if (n == 0) return CMatrix(0, 0);
  const Eigen::Index d = blocks.front().rows();
  CMatrix out(d * static_cast<Eigen::Index>(n), d * static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const CMatrix& b = blocks[i * n + j];
      if (b.rows() != d || b.cols() != d) {
        throw DimensionError("block_matrix: blocks of unequal size");
      }
      out.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(j) * d, d, d) = b;
    }
  }
  return out;
}

CMatrix nullspace(const CMatrix& m, double cutoff) {
  const Eigen::Index n = m.cols();
  if (n == 0) return CMatrix(0, 0);
  if (m.rows() == 0) return CMatrix::Identity(n, n);
  // Tall systems are reduced to their n x n triangular factor first; R has
  // the same singular values and right singular vectors as m.
  CMatrix reduced;
  if (m.rows() > n) {
    Eigen::HouseholderQR<CMatrix> qr(m);
    reduced = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  } else {
    reduced = m;
  }
  Eigen::JacobiSVD<CMatrix> svd(reduced, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

// --- Subspace -------------------------------------------------------------

Subspace::Subspace(std::size_t ambient_dim)
    : ambient_dim_(ambient_dim),
      frame_(static_cast<Eigen::Index>(ambient_dim * ambient_dim), 0) {}

void Subspace::check_dim(const CMatrix& m) const {
  if (static_cast<std::size_t>(m.rows()) != ambient_dim_ ||
      static_cast<std::size_t>(m.cols()) != ambient_dim_) {
    throw DimensionError("subspace of M_" + std::to_string(ambient_dim_) +
                         " given a " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " matrix");
  }
}

CVector Subspace::coefficients(const CMatrix& m) const {
  check_dim(m);
  return frame_.adjoint() * vec(m);
}

CMatrix Subspace::project(const CMatrix& m) const {
  return unvec(frame_ * coefficients(m), ambient_dim_);
}

CMatrix Subspace::combine(const CVector& coeffs) const {
  if (coeffs.size() != static_cast<Eigen::Index>(dim())) {
    throw DimensionError("combine: coefficient count differs from dimension");
  }
  return unvec(frame_ * coeffs, ambient_dim_);
}

double Subspace::distance(const CMatrix& m) const {
  check_dim(m);
  const CVector v = vec(m);
  return (v - frame_ * (frame_.adjoint() * v)).norm();
}

bool Subspace::adjoin(const CMatrix& m, Tolerance tol) {
  check_dim(m);
  CVector v = vec(m);
  const double scale = v.norm();
  // Two passes of classical Gram-Schmidt keep the frame orthonormal to
  // working precision.
  for (int pass = 0; pass < 2; ++pass) {
    if (frame_.cols() > 0) v -= frame_ * (frame_.adjoint() * v);
  }
  const double residual = v.norm();
  if (residual <= tol.threshold(scale)) return false;
  v /= residual;
  frame_.conservativeResize(Eigen::NoChange, frame_.cols() + 1);
  frame_.col(frame_.cols() - 1) = v;
  basis_.push_back(unvec(v, ambient_dim_));
  return true;
}

Subspace orthonormalize(std::span<const CMatrix> mats, std::size_t ambient_dim,
                        Tolerance tol) {
  Subspace s(ambient_dim);
  for (const auto& m : mats) s.adjoin(m, tol);
  return s;
}

Subspace subspace_from_frame(const CMatrix& frame, std::size_t ambient_dim,
                             Tolerance tol) {
  Subspace s(ambient_dim);
  for (Eigen::Index c = 0; c < frame.cols(); ++c) {
    s.adjoin(unvec(frame.col(c), ambient_dim), tol);
  }
  return s;
}

bool contains(const Subspace& s, const CMatrix& m, Tolerance tol) {
  return s.distance(m) <= tol.threshold(m.norm());
}

bool contains(const Subspace& outer, const Subspace& inner, Tolerance tol) {
  if (outer.ambient_dim() != inner.ambient_dim()) {
    throw DimensionError("contains: subspaces of different ambient algebras");
  }
  return std::all_of(inner.basis().begin(), inner.basis().end(),
                     [&](const CMatrix& b) { return contains(outer, b, tol); });
}

bool same_span(const Subspace& a, const Subspace& b, Tolerance tol) {
  return a.dim() == b.dim() && contains(a, b, tol) && contains(b, a, tol);
}

Subspace intersect(const Subspace& a, const Subspace& b, Tolerance tol) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionError("intersect: subspaces of different ambient algebras");
  }
  Subspace out(a.ambient_dim());
  if (a.is_zero() || b.is_zero()) return out;
  // x = Qa c lies in b iff (I - Pb) Qa c = 0; the residual norm is the sine
  // of the principal angle, so the cutoff acts on distances directly.
  const CMatrix& qa = a.frame();
  const CMatrix& qb = b.frame();
  const CMatrix residual = qa - qb * (qb.adjoint() * qa);
  const CMatrix null = nullspace(residual, tol.threshold(1.0));
  return subspace_from_frame(qa * null, a.ambient_dim(), tol);
}

Subspace span_union(const Subspace& a, const Subspace& b, Tolerance tol) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw DimensionError("span_union: subspaces of different ambient algebras");
  }
  Subspace out = a;
  for (const auto& m : b.basis()) out.adjoin(m, tol);
  return out;
}

}  // namespace otro

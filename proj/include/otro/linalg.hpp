#pragma once

/// \file linalg.hpp
/// Dense complex matrix and subspace arithmetic.
///
/// Every space in the toolkit (TROs, squares, centers, ideals, Peirce spaces)
/// is a Subspace of some full matrix algebra M_d, stored as a Hilbert-Schmidt
/// orthonormal basis. Rank and equality decisions go through a Tolerance and
/// are relative to the size of the inputs.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace otro {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Thrown when operands live in different ambient dimensions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Tolerance {
  double eps = 1e-9;

  /// Absolute cutoff for a quantity whose natural size is `scale`.
  [[nodiscard]] double threshold(double scale) const {
    return eps * std::max(1.0, scale);
  }
};

// Basic constructors.
CMatrix zeros(std::size_t d);
CMatrix identity(std::size_t d);
/// Matrix unit E_ij (zero-based).
CMatrix unit(std::size_t d, std::size_t i, std::size_t j);
CMatrix diagonal(std::span<const double> values);

CMatrix adjoint(const CMatrix& m);
/// Hilbert-Schmidt inner product trace(a* b).
Complex hs_inner(const CMatrix& a, const CMatrix& b);
double hs_norm(const CMatrix& m);
/// Largest singular value.
double op_norm(const CMatrix& m);
bool is_hermitian(const CMatrix& m, Tolerance tol = {});
bool is_psd(const CMatrix& m, Tolerance tol = {});
/// Eigenvalues of the Hermitian part, ascending.
Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m);
bool approx_equal(const CMatrix& a, const CMatrix& b, Tolerance tol = {});

/// Row-major vectorization, and its inverse.
CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v, std::size_t d);

/// Block-diagonal sum of square matrices.
CMatrix block_diag(std::span<const CMatrix> blocks);
/// Assembles an n x n block matrix from row-major blocks of equal size.
CMatrix block_matrix(std::span<const CMatrix> blocks, std::size_t n);

/// Orthonormal basis (columns) of {x : m x = 0}, singular values at or below
/// `cutoff` counted as zero.
CMatrix nullspace(const CMatrix& m, double cutoff);

class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0);

  [[nodiscard]] std::size_t ambient_dim() const { return ambient_dim_; }
  [[nodiscard]] std::size_t dim() const { return basis_.size(); }
  [[nodiscard]] bool is_zero() const { return basis_.empty(); }
  [[nodiscard]] const std::vector<CMatrix>& basis() const { return basis_; }
  /// Columns are the row-major vectorized basis matrices.
  [[nodiscard]] const CMatrix& frame() const { return frame_; }

  [[nodiscard]] CVector coefficients(const CMatrix& m) const;
  [[nodiscard]] CMatrix project(const CMatrix& m) const;
  [[nodiscard]] CMatrix combine(const CVector& coeffs) const;
  [[nodiscard]] double distance(const CMatrix& m) const;

  /// Appends m if it is not already in the span. Returns true if added.
  bool adjoin(const CMatrix& m, Tolerance tol);

 private:
  void check_dim(const CMatrix& m) const;

  std::size_t ambient_dim_;
  std::vector<CMatrix> basis_;
  CMatrix frame_;
};

/// Gram-Schmidt with reorthogonalization; numerically dependent inputs are
/// dropped.
Subspace orthonormalize(std::span<const CMatrix> mats, std::size_t ambient_dim,
                        Tolerance tol = {});
/// Subspace spanned by the columns of `frame` (vectorized, not necessarily
/// orthonormal).
Subspace subspace_from_frame(const CMatrix& frame, std::size_t ambient_dim,
                             Tolerance tol = {});

bool contains(const Subspace& s, const CMatrix& m, Tolerance tol = {});
bool contains(const Subspace& outer, const Subspace& inner, Tolerance tol = {});
bool same_span(const Subspace& a, const Subspace& b, Tolerance tol = {});
Subspace intersect(const Subspace& a, const Subspace& b, Tolerance tol = {});
Subspace span_union(const Subspace& a, const Subspace& b, Tolerance tol = {});

}  // namespace otro

#include "otro/random.hpp"

#include <cmath>

namespace otro {

CMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

CMatrix random_square(std::size_t d, Rng& rng) { return random_matrix(d, d, rng); }

CMatrix random_hermitian(std::size_t d, Rng& rng) {
  const CMatrix g = random_square(d, rng);
  return 0.5 * (g + g.adjoint());
}

CMatrix random_unitary(std::size_t d, Rng& rng) {
  if (d == 0) return CMatrix(0, 0);
  const CMatrix g = random_square(d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0) q.col(j) *= diag / mag;
  }
  return q;
}

CMatrix random_projection(std::size_t d, std::size_t rank, Rng& rng) {
  const CMatrix u = random_unitary(d, rng);
  const CMatrix v = u.leftCols(static_cast<Eigen::Index>(rank));
  return v * v.adjoint();
}

CMatrix random_element(const Subspace& s, Rng& rng) {
  if (s.is_zero()) return zeros(s.ambient_dim());
  const CMatrix c = random_matrix(s.dim(), 1, rng);
  return s.combine(c.col(0));
}

CMatrix random_real_combination(std::span<const CMatrix> mats, std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix out = zeros(d);
  for (const auto& m : mats) out += normal(rng) * m;
  return out;
}

}  // namespace otro

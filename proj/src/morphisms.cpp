#include "otro/morphisms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace otro {

namespace {

// Moore-Penrose pseudo-inverse with a relative singular value cutoff.
CMatrix pseudo_inverse(const CMatrix& m, Tolerance tol) {
  if (m.size() == 0) return CMatrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = tol.threshold(sv.size() > 0 ? sv(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

// Random positive element of M_k(J): B* B with B a k x k block matrix over J.
CMatrix random_positive_block(const Subspace& j, std::size_t k, Rng& rng) {
  std::vector<CMatrix> blocks;
  blocks.reserve(k * k);
  std::uniform_int_distribution<std::size_t> pick_rank(1, k);
  const std::size_t rows = pick_rank(rng);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      blocks.push_back(r < rows ? random_element(j, rng) : zeros(j.ambient_dim()));
    }
  }
  const CMatrix b = block_matrix(blocks, k);
  return b.adjoint() * b;
}

// Choi-type positive input sum_{i,j<k} E_ij (x) E_ij over M_d.
CMatrix choi_input(std::size_t d, std::size_t k) {
  std::vector<CMatrix> blocks;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) blocks.push_back(unit(d, i, j));
  }
  return block_matrix(blocks, k);
}

double min_eigenvalue(const CMatrix& m) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(m);
  return ev.size() > 0 ? ev.minCoeff() : 0.0;
}

}  // namespace

LinearMap::LinearMap(Subspace domain, std::size_t codomain_dim, CMatrix matrix)
    : domain_(std::move(domain)), codomain_dim_(codomain_dim), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(domain_.ambient_dim());
  const auto dc = static_cast<Eigen::Index>(codomain_dim_);
  if (matrix_.rows() != dc * dc || matrix_.cols() != d * d) {
    throw DimensionError("LinearMap: matrix must be (d'^2) x (d^2)");
  }
}

CMatrix LinearMap::operator()(const CMatrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != domain_dim() || x.rows() != x.cols()) {
    throw DimensionError("LinearMap: argument has the wrong dimension");
  }
  return unvec(matrix_ * vec(x), codomain_dim_);
}

CMatrix LinearMap::amplify(const CMatrix& x, std::size_t n) const {
  const auto d = static_cast<Eigen::Index>(domain_dim());
  const auto dc = static_cast<Eigen::Index>(codomain_dim_);
  const auto nn = static_cast<Eigen::Index>(n);
  if (x.rows() != d * nn || x.cols() != d * nn) {
    throw DimensionError("LinearMap::amplify: argument is not an n x n block matrix");
  }
  CMatrix out(dc * nn, dc * nn);
  for (Eigen::Index i = 0; i < nn; ++i) {
    for (Eigen::Index j = 0; j < nn; ++j) {
      out.block(i * dc, j * dc, dc, dc) = (*this)(CMatrix(x.block(i * d, j * d, d, d)));
    }
  }
  return out;
}

LinearMap LinearMap::compose_after(const LinearMap& other) const {
  if (other.codomain_dim() != domain_dim()) {
    throw DimensionError("compose_after: codomain of the inner map differs");
  }
  return LinearMap(other.domain(), codomain_dim_, matrix_ * other.matrix());
}

LinearMap identity_map(const Subspace& domain) {
  return LinearMap::from_function(domain, domain.ambient_dim(),
                                  [](const CMatrix& x) { return x; });
}

LinearMap transpose_map(const Subspace& domain) {
  return LinearMap::from_function(domain, domain.ambient_dim(),
                                  [](const CMatrix& x) { return CMatrix(x.transpose()); });
}

LinearMap scalar_map(const Subspace& domain, Complex factor) {
  return LinearMap::from_function(domain, domain.ambient_dim(),
                                  [factor](const CMatrix& x) { return CMatrix(factor * x); });
}

LinearMap trace_map(const Subspace& domain) {
  const std::size_t d = domain.ambient_dim();
  return LinearMap::from_function(domain, d, [d](const CMatrix& x) {
    return CMatrix(x.trace() / static_cast<double>(d) * identity(d));
  });
}

LinearMap conjugation_map(const Subspace& domain, const CMatrix& v) {
  if (static_cast<std::size_t>(v.cols()) != domain.ambient_dim()) {
    throw DimensionError("conjugation_map: V has the wrong number of columns");
  }
  return LinearMap::from_function(domain, static_cast<std::size_t>(v.rows()),
                                  [&v](const CMatrix& x) { return CMatrix(v * x * v.adjoint()); });
}

LinearMap compression_map(const Subspace& domain, const CMatrix& e) {
  return LinearMap::from_function(domain, domain.ambient_dim(),
                                  [&e](const CMatrix& x) { return CMatrix(e * x * e); });
}

LinearMap diagonal_expectation(const Subspace& domain) {
  return LinearMap::from_function(domain, domain.ambient_dim(), [](const CMatrix& x) {
    return CMatrix(x.diagonal().asDiagonal());
  });
}

LinearMap sign_flip_map(const Subspace& domain, const CMatrix& p, const CMatrix& q) {
  return LinearMap::from_function(domain, domain.ambient_dim(), [&](const CMatrix& x) {
    return CMatrix(p * x * p - q * x * q);
  });
}

bool is_selfadjoint_map(const LinearMap& t, Tolerance tol) {
  for (const auto& x : t.domain().basis()) {
    if (!approx_equal(t(CMatrix(x.adjoint())), CMatrix(t(x).adjoint()), tol)) return false;
  }
  return true;
}

bool is_ternary_star_morphism(const LinearMap& t, Tolerance tol) {
  if (!is_selfadjoint_map(t, tol)) return false;
  const auto& basis = t.domain().basis();
  std::vector<CMatrix> images;
  images.reserve(basis.size());
  for (const auto& b : basis) images.push_back(t(b));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const CMatrix lhs = t(ternary_product(basis[i], basis[j], basis[k]));
        const CMatrix rhs = ternary_product(images[i], images[j], images[k]);
        if (!approx_equal(lhs, rhs, tol)) return false;
      }
    }
  }
  return true;
}

InducedHom induced_hom(const LinearMap& t, Tolerance tol) {
  if (!is_ternary_star_morphism(t, tol)) {
    throw std::invalid_argument("induced_hom: map is not a ternary *-morphism");
  }
  const auto& basis = t.domain().basis();
  const std::size_t d = t.domain_dim();
  const std::size_t dc = t.codomain_dim();
  const auto k = static_cast<Eigen::Index>(basis.size());

  CMatrix products(static_cast<Eigen::Index>(d * d), k * k);
  CMatrix images(static_cast<Eigen::Index>(dc * dc), k * k);
  std::vector<CMatrix> tb;
  for (const auto& b : basis) tb.push_back(t(b));
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      products.col(i * k + j) = vec(CMatrix(basis[ui].adjoint() * basis[uj]));
      images.col(i * k + j) = vec(CMatrix(tb[ui].adjoint() * tb[uj]));
    }
  }
  const Subspace square = square_of(t.domain(), tol);
  CMatrix pi_matrix = images * pseudo_inverse(products, tol);
  if (pi_matrix.size() == 0) {
    pi_matrix = CMatrix::Zero(static_cast<Eigen::Index>(dc * dc), static_cast<Eigen::Index>(d * d));
  }
  InducedHom out{LinearMap(square, dc, pi_matrix)};

  out.well_defined = true;
  for (Eigen::Index c = 0; c < products.cols(); ++c) {
    const CVector mapped = pi_matrix * products.col(c);
    const double err = (mapped - images.col(c)).norm();
    if (err > tol.threshold(images.col(c).norm())) {
      out.well_defined = false;
      out.witness = unvec(products.col(c), d);
      break;
    }
  }
  out.multiplicative = true;
  out.star_preserving = true;
  const LinearMap& pi = out.pi;
  for (const auto& a : square.basis()) {
    if (!approx_equal(pi(CMatrix(a.adjoint())), CMatrix(pi(a).adjoint()), tol)) {
      out.star_preserving = false;
    }
    for (const auto& b : square.basis()) {
      if (!approx_equal(pi(CMatrix(a * b)), CMatrix(pi(a) * pi(b)), tol)) {
        out.multiplicative = false;
      }
    }
  }
  return out;
}

CpVerdict check_completely_positive(const LinearMap& t, std::size_t max_level, Rng& rng,
                                    std::size_t samples_per_level, Tolerance tol) {
  if (max_level > 4) throw std::invalid_argument("complete positivity is checked up to level 4");
  CpVerdict verdict;
  const std::size_t d = t.domain_dim();
  const Subspace j = intersect(t.domain(), square_of(t.domain(), tol), tol);
  const bool full_algebra = t.domain().dim() == d * d;

  auto test = [&](const CMatrix& x, std::size_t level) {
    const CMatrix image = t.amplify(x, level);
    if (is_psd(image, tol)) return false;
    verdict.refuted = true;
    verdict.level = level;
    verdict.witness = x;
    verdict.image = image;
    verdict.min_eigenvalue = min_eigenvalue(image);
    return true;
  };

  for (std::size_t level = 1; level <= max_level; ++level) {
    verdict.levels_checked = level;
    if (full_algebra && level <= d && test(choi_input(d, level), level)) return verdict;
    if (j.is_zero()) continue;
    for (std::size_t s = 0; s < samples_per_level; ++s) {
      if (test(random_positive_block(j, level, rng), level)) return verdict;
    }
  }
  return verdict;
}

bool is_completely_positive_up_to(const LinearMap& t, std::size_t max_level, Rng& rng,
                                  Tolerance tol) {
  return !check_completely_positive(t, max_level, rng, 24, tol).refuted;
}

bool is_positive(const LinearMap& t, Rng& rng, std::size_t samples, Tolerance tol) {
  return !check_completely_positive(t, 1, rng, samples, tol).refuted;
}

CMatrix compressed_product(const LinearMap& p, const CMatrix& x, const CMatrix& y,
                           const CMatrix& z) {
  return p(ternary_product(x, y, z));
}

YoungsonStructure youngson_compress(const LinearMap& p, const Tro& z, Rng& rng,
                                    std::size_t samples) {
  const Tolerance tol = z.tolerance();
  if (p.domain_dim() != z.ambient_dim() || p.codomain_dim() != z.ambient_dim()) {
    throw DimensionError("youngson_compress: map and TRO live in different algebras");
  }
  YoungsonStructure out{Subspace(z.ambient_dim()), Subspace(z.ambient_dim())};
  for (const auto& b : z.space().basis()) {
    const CMatrix pb = p(b);
    if (!contains(z.space(), pb, tol)) {
      throw std::invalid_argument("youngson_compress: P does not map Z into Z");
    }
    if (!approx_equal(p(pb), pb, tol)) {
      throw std::invalid_argument("youngson_compress: P is not idempotent");
    }
    out.range.adjoin(pb, tol);
  }
  out.idempotent = true;

  const LinearMap on_z(z.space(), p.codomain_dim(), p.matrix());
  out.completely_positive = !check_completely_positive(on_z, 2, rng, samples, tol).refuted;

  out.contractive = true;
  for (std::size_t level = 1; level <= 2 && out.contractive; ++level) {
    for (std::size_t s = 0; s < samples; ++s) {
      std::vector<CMatrix> blocks;
      for (std::size_t b = 0; b < level * level; ++b) blocks.push_back(random_element(z.space(), rng));
      const CMatrix x = block_matrix(blocks, level);
      if (op_norm(p.amplify(x, level)) > op_norm(x) * (1.0 + tol.eps) + tol.eps) {
        out.contractive = false;
        break;
      }
    }
  }

  out.range_selfadjoint = is_selfadjoint(out.range, tol);

  const auto& rb = out.range.basis();
  out.involutive = out.range_selfadjoint;
  for (const auto& x : rb) {
    for (const auto& y : rb) {
      for (const auto& w : rb) {
        const CMatrix lhs = CMatrix(compressed_product(p, x, y, w).adjoint());
        const CMatrix rhs =
            compressed_product(p, CMatrix(w.adjoint()), CMatrix(y.adjoint()), CMatrix(x.adjoint()));
        if (!approx_equal(lhs, rhs, tol)) out.involutive = false;
      }
    }
  }

  out.associative = true;
  for (std::size_t s = 0; s < samples && !out.range.is_zero(); ++s) {
    const CMatrix a = random_element(out.range, rng);
    const CMatrix b = random_element(out.range, rng);
    const CMatrix c = random_element(out.range, rng);
    const CMatrix d = random_element(out.range, rng);
    const CMatrix e = random_element(out.range, rng);
    auto prod = [&](const CMatrix& x, const CMatrix& y, const CMatrix& w) {
      return compressed_product(p, x, y, w);
    };
    const CMatrix left = prod(prod(a, b, c), d, e);
    const CMatrix middle = prod(a, prod(d, c, b), e);
    const CMatrix right = prod(a, b, prod(c, d, e));
    if (!approx_equal(left, middle, tol) || !approx_equal(left, right, tol) ||
        !contains(out.range, left, tol)) {
      out.associative = false;
    }
  }

  // P(Z_+) inside range cap Z_+, and range cap Z_+ fixed by P.
  out.cone_matches = true;
  const Subspace jz = z.j_ideal();
  for (std::size_t s = 0; s < samples && !jz.is_zero(); ++s) {
    const CMatrix y = random_element(jz, rng);
    const CMatrix image = p(CMatrix(y * y.adjoint()));
    out.cone_span.adjoin(image, tol);
    if (!is_psd(image, tol) || !contains(out.range, image, tol)) out.cone_matches = false;
  }
  const Subspace positive_part = intersect(out.range, jz, tol);
  const bool part_is_algebra = std::all_of(
      positive_part.basis().begin(), positive_part.basis().end(), [&](const CMatrix& a) {
        return std::all_of(positive_part.basis().begin(), positive_part.basis().end(),
                           [&](const CMatrix& b) { return contains(positive_part, CMatrix(a * b), tol); });
      });
  if (part_is_algebra) {
    for (std::size_t s = 0; s < samples && !positive_part.is_zero(); ++s) {
      const CMatrix y = random_element(positive_part, rng);
      const CMatrix pos = y * y.adjoint();
      if (!approx_equal(p(pos), pos, tol)) out.cone_matches = false;
    }
  }
  return out;
}

Period2Automorphism period2_automorphism(const Tro& z) {
  const Tolerance tol = z.tolerance();
  if (!z.j_ideal().is_zero()) {
    throw std::domain_error("period2_automorphism: requires Z cap Z^2 = 0");
  }
  const std::size_t d = z.ambient_dim();
  const Subspace algebra = span_union(z.space(), z.square(), tol);
  const auto kz = static_cast<Eigen::Index>(z.dim());
  const auto ks = static_cast<Eigen::Index>(z.square().dim());
  CMatrix frame(static_cast<Eigen::Index>(d * d), kz + ks);
  if (kz > 0) frame.leftCols(kz) = z.space().frame();
  if (ks > 0) frame.rightCols(ks) = z.square().frame();
  Eigen::VectorXcd signs(kz + ks);
  signs.head(kz).setConstant(-1.0);
  signs.tail(ks).setConstant(1.0);
  const CMatrix theta_matrix = frame * signs.asDiagonal() * pseudo_inverse(frame, tol);

  Period2Automorphism out{LinearMap(algebra, d, theta_matrix), algebra};
  const LinearMap& theta = out.theta;
  const auto& basis = algebra.basis();
  out.multiplicative = true;
  out.star_preserving = true;
  out.involution = true;
  for (const auto& x : basis) {
    const CMatrix tx = theta(x);
    if (!approx_equal(theta(tx), x, tol)) out.involution = false;
    if (!approx_equal(theta(CMatrix(x.adjoint())), CMatrix(tx.adjoint()), tol)) {
      out.star_preserving = false;
    }
    for (const auto& y : basis) {
      if (!approx_equal(theta(CMatrix(x * y)), CMatrix(tx * theta(y)), tol)) {
        out.multiplicative = false;
      }
    }
  }

  // Eigenspaces of theta on A, in the coordinates of A's frame.
  const CMatrix& qa = algebra.frame();
  const CMatrix restricted = qa.adjoint() * theta_matrix * qa;
  const auto ka = restricted.rows();
  const CMatrix id = CMatrix::Identity(ka, ka);
  const Subspace fixed =
      subspace_from_frame(qa * nullspace(restricted - id, tol.threshold(1.0)), d, tol);
  const Subspace negated =
      subspace_from_frame(qa * nullspace(restricted + id, tol.threshold(1.0)), d, tol);
  out.fixed_space_is_square = same_span(fixed, z.square(), tol);
  out.negated_space_is_z = same_span(negated, z.space(), tol);
  return out;
}

}  // namespace otro

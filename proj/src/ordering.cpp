#include "otro/ordering.hpp"

#include <algorithm>
#include <stdexcept>

namespace otro {

namespace {

void require_central(const Tripotent& u, const Tro& z) {
  const Tolerance tol = z.tolerance();
  if (u.dim() != z.ambient_dim()) throw DimensionError("tripotent dimension differs from TRO");
  if (!is_selfadjoint_tripotent(u.u, tol) || !contains(z.center(), u.u, tol)) {
    throw std::invalid_argument("expected a central selfadjoint tripotent of the TRO");
  }
}

}  // namespace

bool cone_membership(const CMatrix& x, const Tripotent& u, const Tro& z) {
  const Tolerance tol = z.tolerance();
  if (static_cast<std::size_t>(x.rows()) != z.ambient_dim() || x.rows() != x.cols()) {
    throw DimensionError("cone_membership: element dimension differs from TRO");
  }
  if (!contains(z.space(), x, tol)) {
    throw std::invalid_argument("cone_membership: element is not in the TRO");
  }
  if ((u.u * x * u.u - x).norm() > tol.threshold(x.norm())) return false;
  return is_psd(u.u * x, tol);
}

bool matrix_cone_membership(std::span<const CMatrix> blocks, std::size_t n, const Tripotent& u,
                            const Tro& z) {
  const Tolerance tol = z.tolerance();
  if (n == 0 || n > kMaxMatrixLevel) {
    throw std::invalid_argument("matrix_cone_membership: level must be in 1..4");
  }
  if (blocks.size() != n * n) throw DimensionError("matrix_cone_membership: need n*n blocks");
  for (const auto& b : blocks) {
    if (static_cast<std::size_t>(b.rows()) != z.ambient_dim() || b.rows() != b.cols()) {
      throw DimensionError("matrix_cone_membership: block dimension differs from TRO");
    }
    if (!contains(z.space(), b, tol)) {
      throw std::invalid_argument("matrix_cone_membership: block is not in the TRO");
    }
  }
  const CMatrix x = block_matrix(blocks, n);
  const std::vector<CMatrix> copies(n, u.u);
  const CMatrix amplified = block_diag(copies);
  if ((amplified * x * amplified - x).norm() > tol.threshold(x.norm())) return false;
  return is_psd(amplified * x, tol);
}

NaturalCone::NaturalCone(Tripotent u, std::shared_ptr<const Tro> host)
    : u_(std::move(u)), host_(std::move(host)) {
  require_central(u_, *host_);
}

CMatrix NaturalCone::sample(Rng& rng) const {
  const CMatrix e = random_element(host_->space(), rng);
  return e * u_.u * e.adjoint();
}

Subspace peirce_space(const Tripotent& u, const Tro& z) {
  if (u.dim() != z.ambient_dim()) throw DimensionError("peirce_space: dimension mismatch");
  Subspace out(z.ambient_dim());
  for (const auto& b : z.space().basis()) out.adjoin(u.u * b * u.u, z.tolerance());
  return out;
}

CMatrix peirce_product(const CMatrix& x, const CMatrix& y, const Tripotent& u, Tolerance tol) {
  if (x.rows() != u.u.rows() || y.rows() != u.u.rows()) {
    throw DimensionError("peirce_product: dimension mismatch");
  }
  const CMatrix p = u.u * u.u;
  for (const CMatrix* m : {&x, &y}) {
    if ((p * *m * p - *m).norm() > tol.threshold(m->norm())) {
      throw std::invalid_argument("peirce_product: input is outside the Peirce 2-space");
    }
  }
  return x * u.u * y;
}

bool peirce_is_c_star_algebra(const Subspace& peirce, const Tripotent& u, Rng& rng,
                              std::size_t samples, Tolerance tol) {
  const auto& basis = peirce.basis();
  for (const auto& x : basis) {
    if (!contains(peirce, CMatrix(x.adjoint()), tol)) return false;
    if (!approx_equal(peirce_product(u.u, x, u, tol), x, tol)) return false;
    if (!approx_equal(peirce_product(x, u.u, u, tol), x, tol)) return false;
    for (const auto& y : basis) {
      if (!contains(peirce, peirce_product(x, y, u, tol), tol)) return false;
    }
  }
  for (std::size_t s = 0; s < samples && !peirce.is_zero(); ++s) {
    const CMatrix x = random_element(peirce, rng);
    const double norm = op_norm(x);
    const double lhs = op_norm(peirce_product(x, CMatrix(x.adjoint()), u, tol));
    if (std::abs(lhs - norm * norm) > 1e-8 * std::max(1.0, norm * norm)) return false;
  }
  return true;
}

Decomposition decompose(const Tro& z, const Tripotent& u) {
  require_central(u, z);
  const Tolerance tol = z.tolerance();
  Decomposition out{peirce_space(u, z), Subspace(z.ambient_dim())};
  out.complement_part = orthocomplement_ideal(z, out.algebra_part);
  out.reconstructs = same_span(span_union(out.algebra_part, out.complement_part, tol), z.space(), tol);
  Rng rng(0);
  out.algebra_is_star_algebra = peirce_is_c_star_algebra(out.algebra_part, u, rng, 8, tol);
  return out;
}

bool is_unorderable(const Tro& z) { return z.center().is_zero(); }

ClassificationReport classify(const Tro& z, std::size_t max_blocks) {
  const Tolerance tol = z.tolerance();
  ClassificationReport r;
  r.ambient_dim = z.ambient_dim();
  r.space_dim = z.dim();
  r.square_dim = z.square().dim();
  r.dim_of_center = z.center().dim();
  r.is_unorderable = is_unorderable(z);

  TripotentEnumeration e = enumerate_central_tripotents(z, max_blocks);
  r.block_count = e.block_count;
  r.tripotents = std::move(e.tripotents);
  r.natural_cone_count = r.tripotents.size();

  const std::vector<Tripotent> maximal = maximal_central_tripotents(z, max_blocks);
  for (const auto& m : maximal) {
    for (std::size_t i = 0; i < r.tripotents.size(); ++i) {
      if (approx_equal(r.tripotents[i].u, m.u, tol)) {
        r.is_maximally_ordered_candidates.push_back(i);
        break;
      }
    }
  }
  r.maximal_cone_count = r.is_maximally_ordered_candidates.size();
  r.maximal_sets_agree = leq_maximal_indices(r.tripotents, tol) == r.is_maximally_ordered_candidates;

  const Subspace j = z.j_ideal();
  r.decomposition_dims = {j.dim(), orthocomplement_ideal(z, j).dim()};

  for (std::size_t idx : r.is_maximally_ordered_candidates) {
    const Decomposition d = decompose(z, r.tripotents[idx]);
    r.splits.push_back(MaximalSplit{idx, d.algebra_part.dim(), d.complement_part.dim(),
                                    d.reconstructs, d.algebra_is_star_algebra});
  }
  return r;
}

ConeIntersectionResult cone_intersection_is_meet(const Tripotent& u, const Tripotent& v,
                                                 const Tro& z, Rng& rng, std::size_t samples) {
  require_central(u, z);
  require_central(v, z);
  const Tripotent w = meet(u, v, z.tolerance());
  std::vector<CMatrix> candidates;
  candidates.push_back(zeros(z.ambient_dim()));
  candidates.push_back(u.u);
  candidates.push_back(v.u);
  candidates.push_back(w.u);
  for (std::size_t s = 0; s < samples; ++s) {
    const CMatrix e = random_element(z.space(), rng);
    candidates.push_back(e * u.u * e.adjoint());
    candidates.push_back(e * v.u * e.adjoint());
    candidates.push_back(e * w.u * e.adjoint());
    const CMatrix f = random_element(z.space(), rng);
    candidates.push_back(e * u.u * e.adjoint() + f * v.u * f.adjoint());
    candidates.push_back(0.5 * (f + f.adjoint()));
  }
  ConeIntersectionResult out;
  for (const auto& x : candidates) {
    const bool both = cone_membership(x, u, z) && cone_membership(x, v, z);
    if (both != cone_membership(x, w, z)) {
      out.holds = false;
      out.counterexample = x;
      break;
    }
  }
  return out;
}

std::pair<CMatrix, CMatrix> positive_negative_parts(const Tripotent& u) {
  const CMatrix sq = u.u * u.u;
  return {0.5 * (sq + u.u), 0.5 * (sq - u.u)};
}

}  // namespace otro

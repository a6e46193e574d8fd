#include "otro/tro.hpp"

#include <string>

namespace otro {

namespace {

void require_square_dims(std::span<const CMatrix> mats, std::size_t d, const char* what) {
  for (const auto& m : mats) {
    if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d) {
      throw DimensionError(std::string(what) + ": expected " + std::to_string(d) + "x" +
                           std::to_string(d) + " matrices");
    }
  }
}

// Coefficient vectors c (in the frame of `s`) solving sum_i c_i f(b_i) = 0,
// where f is linear and matrix valued. Returned as a subspace of s.
template <typename F>
Subspace solve_in(const Subspace& s, std::size_t equations, Tolerance tol, F&& f) {
  const auto k = static_cast<Eigen::Index>(s.dim());
  if (k == 0) return Subspace(s.ambient_dim());
  const auto d2 = static_cast<Eigen::Index>(s.ambient_dim() * s.ambient_dim());
  CMatrix system = CMatrix::Zero(d2 * static_cast<Eigen::Index>(equations), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (std::size_t e = 0; e < equations; ++e) {
      system.block(static_cast<Eigen::Index>(e) * d2, i, d2, 1) =
          vec(f(e, s.basis()[static_cast<std::size_t>(i)]));
    }
  }
  if (equations == 0) return s;
  const CMatrix null = nullspace(system, tol.threshold(system.norm()));
  return subspace_from_frame(s.frame() * null, s.ambient_dim(), tol);
}

}  // namespace

CMatrix ternary_product(const CMatrix& x, const CMatrix& y, const CMatrix& z) {
  if (x.rows() != y.rows() || y.rows() != z.rows() || x.cols() != y.cols() ||
      y.cols() != z.cols()) {
    throw DimensionError("ternary_product: dimension mismatch");
  }
  return x * y.adjoint() * z;
}

bool is_selfadjoint(const Subspace& s, Tolerance tol) {
  for (const auto& b : s.basis()) {
    if (!contains(s, CMatrix(b.adjoint()), tol)) return false;
  }
  return true;
}

bool is_tro(const Subspace& s, Tolerance tol) {
  const auto& basis = s.basis();
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      const CMatrix xy = x * y.adjoint();
      for (const auto& z : basis) {
        if (!contains(s, CMatrix(xy * z), tol)) return false;
      }
    }
  }
  return true;
}

Subspace square_of(const Subspace& s, Tolerance tol) {
  Subspace sq(s.ambient_dim());
  for (const auto& z : s.basis()) {
    for (const auto& w : s.basis()) sq.adjoin(z * w, tol);
  }
  return sq;
}

Tro::Tro(Subspace space, Tolerance tol)
    : space_(std::move(space)), square_(space_.ambient_dim()), j_ideal_(space_.ambient_dim()),
      center_(space_.ambient_dim()), tol_(tol) {
  square_ = square_of(space_, tol_);
  j_ideal_ = intersect(space_, square_, tol_);
  const auto& sq = square_.basis();
  center_ = solve_in(space_, sq.size(), tol_, [&](std::size_t e, const CMatrix& c) {
    return CMatrix(sq[e] * c - c * sq[e]);
  });
}

Tro Tro::certify(Subspace space, Tolerance tol) {
  if (!is_selfadjoint(space, tol)) {
    throw CertificationError("subspace is not closed under the adjoint");
  }
  if (!is_tro(space, tol)) {
    throw CertificationError("subspace is not closed under x y* z");
  }
  return Tro(std::move(space), tol);
}

Tro Tro::zero(std::size_t ambient_dim) { return Tro(Subspace(ambient_dim), Tolerance{}); }

Tro closure_from_generators(std::span<const CMatrix> gens, std::size_t ambient_dim,
                            Tolerance tol) {
  require_square_dims(gens, ambient_dim, "closure_from_generators");
  Subspace s(ambient_dim);
  for (const auto& g : gens) {
    s.adjoin(g, tol);
    s.adjoin(CMatrix(g.adjoint()), tol);
  }
  const std::size_t max_rounds = std::max<std::size_t>(1, ambient_dim * ambient_dim);
  for (std::size_t round = 0;; ++round) {
    if (round >= max_rounds) {
      throw CertificationError("closure did not stabilize within d^2 rounds");
    }
    const std::size_t before = s.dim();
    const std::vector<CMatrix> basis = s.basis();
    for (const auto& b : basis) s.adjoin(CMatrix(b.adjoint()), tol);
    for (const auto& x : basis) {
      for (const auto& y : basis) {
        const CMatrix xy = x * y.adjoint();
        for (const auto& z : basis) s.adjoin(xy * z, tol);
      }
    }
    if (s.dim() == before) break;
  }
  return Tro::certify(std::move(s), tol);
}

Subspace j_space(const Tro& z) { return z.j_ideal(); }

Subspace center(const Tro& z) { return z.center(); }

Subspace orthocomplement_ideal(const Tro& z, const Subspace& j) {
  const Tolerance tol = z.tolerance();
  if (!contains(z.space(), j, tol)) {
    throw std::invalid_argument("orthocomplement_ideal: J is not contained in Z");
  }
  const auto& jb = j.basis();
  return solve_in(z.space(), jb.size(), tol,
                  [&](std::size_t e, const CMatrix& x) { return CMatrix(x * jb[e]); });
}

Subspace embed_block(const Subspace& s, std::size_t offset, std::size_t total_dim,
                     Tolerance tol) {
  const std::size_t d = s.ambient_dim();
  if (offset + d > total_dim) throw DimensionError("embed_block: block does not fit");
  Subspace out(total_dim);
  for (const auto& b : s.basis()) {
    CMatrix m = zeros(total_dim);
    m.block(static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(offset),
            static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) = b;
    out.adjoin(m, tol);
  }
  return out;
}

Tro direct_sum(const Tro& z1, const Tro& z2) {
  const std::size_t total = z1.ambient_dim() + z2.ambient_dim();
  const Tolerance tol{std::max(z1.tolerance().eps, z2.tolerance().eps)};
  Subspace s = embed_block(z1.space(), 0, total, tol);
  const Subspace second = embed_block(z2.space(), z1.ambient_dim(), total, tol);
  for (const auto& b : second.basis()) s.adjoin(b, tol);
  return Tro::certify(std::move(s), tol);
}

bool is_ternary_ideal(const Tro& z, const Subspace& n, Tolerance tol) {
  if (!contains(z.space(), n, tol) || !is_selfadjoint(n, tol)) return false;
  const auto& zb = z.space().basis();
  for (const auto& x : zb) {
    for (const auto& y : zb) {
      for (const auto& m : n.basis()) {
        if (!contains(n, ternary_product(x, y, m), tol)) return false;
        if (!contains(n, ternary_product(x, m, y), tol)) return false;
        if (!contains(n, ternary_product(m, x, y), tol)) return false;
      }
    }
  }
  return true;
}

Subspace ideal_generated(const Tro& z, std::span<const CMatrix> elements) {
  const Tolerance tol = z.tolerance();
  require_square_dims(elements, z.ambient_dim(), "ideal_generated");
  Subspace n(z.ambient_dim());
  for (const auto& e : elements) {
    n.adjoin(e, tol);
    n.adjoin(CMatrix(e.adjoint()), tol);
  }
  const auto& zb = z.space().basis();
  for (;;) {
    const std::size_t before = n.dim();
    const std::vector<CMatrix> nb = n.basis();
    for (const auto& m : nb) {
      n.adjoin(CMatrix(m.adjoint()), tol);
      for (const auto& x : zb) {
        for (const auto& y : zb) {
          n.adjoin(ternary_product(x, y, m), tol);
          n.adjoin(ternary_product(x, m, y), tol);
          n.adjoin(ternary_product(m, x, y), tol);
        }
      }
    }
    if (n.dim() == before) break;
  }
  return n;
}

}  // namespace otro

#include "otro/tripotents.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "otro/random.hpp"

namespace otro {

namespace {

constexpr std::uint64_t kGenericSeed = 0x5eedf00dULL;

std::vector<CMatrix> selfadjoint_center_family(const Tro& z) {
  const Tolerance tol = z.tolerance();
  std::vector<CMatrix> family;
  for (const auto& c : z.center().basis()) {
    const CMatrix re = 0.5 * (c + c.adjoint());
    const CMatrix im = Complex(0.0, -0.5) * (c - c.adjoint());
    if (re.norm() > tol.threshold(1.0)) family.push_back(re);
    if (im.norm() > tol.threshold(1.0)) family.push_back(im);
  }
  return family;
}

// Splits the block spanned by the columns of v into eigenspaces of the
// compression v* h v.
std::vector<CMatrix> split_block(const CMatrix& v, const CMatrix& h, Tolerance tol) {
  const CMatrix compressed = v.adjoint() * h * v;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (compressed + compressed.adjoint()));
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = tol.threshold(op_norm(h));
  std::vector<CMatrix> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= ev.size(); ++i) {
    if (i == ev.size() || ev(i) - ev(i - 1) > cutoff) {
      out.emplace_back(v * es.eigenvectors().middleCols(start, i - start));
      start = i;
    }
  }
  return out;
}

}  // namespace

bool is_selfadjoint_tripotent(const CMatrix& u, Tolerance tol) {
  if (u.rows() != u.cols()) return false;
  const double scale = op_norm(u);
  if ((u - u.adjoint()).norm() > tol.threshold(scale)) return false;
  return (u * u * u - u).norm() <= tol.threshold(scale * scale * scale);
}

Tripotent make_tripotent(const CMatrix& u, const Tro& z) {
  if (!is_selfadjoint_tripotent(u, z.tolerance())) {
    throw std::invalid_argument("matrix is not a selfadjoint tripotent");
  }
  if (static_cast<std::size_t>(u.rows()) != z.ambient_dim()) {
    throw DimensionError("tripotent and TRO live in different matrix algebras");
  }
  return Tripotent{u, contains(z.center(), u, z.tolerance())};
}

bool leq(const Tripotent& u, const Tripotent& v, Tolerance tol) {
  if (u.dim() != v.dim()) throw DimensionError("leq: dimension mismatch");
  return (u.u * v.u * u.u - u.u).norm() <= tol.threshold(u.u.norm());
}

Tripotent meet(const Tripotent& u, const Tripotent& v, Tolerance tol) {
  if (u.dim() != v.dim()) throw DimensionError("meet: dimension mismatch");
  if (!is_selfadjoint_tripotent(u.u, tol) || !is_selfadjoint_tripotent(v.u, tol)) {
    throw std::invalid_argument("meet: input is not a selfadjoint tripotent");
  }
  CMatrix w = 0.5 * (u.u * v.u * u.u + v.u * u.u * v.u);
  if (!is_selfadjoint_tripotent(w, tol)) {
    throw std::invalid_argument("meet: (uvu + vuv)/2 is not a tripotent; inputs do not commute");
  }
  return Tripotent{std::move(w), u.is_central && v.is_central};
}

std::vector<CMatrix> center_blocks(const Tro& z) {
  const Tolerance tol = z.tolerance();
  const std::vector<CMatrix> family = selfadjoint_center_family(z);
  if (family.empty()) return {};
  const std::size_t d = z.ambient_dim();

  Rng rng(kGenericSeed);
  const CMatrix generic = random_real_combination(family, d, rng);

  std::vector<CMatrix> blocks = split_block(identity(d), generic, tol);
  for (const auto& h : family) {
    std::vector<CMatrix> refined;
    for (const auto& b : blocks) {
      auto parts = split_block(b, h, tol);
      refined.insert(refined.end(), std::make_move_iterator(parts.begin()),
                     std::make_move_iterator(parts.end()));
    }
    blocks = std::move(refined);
  }

  std::erase_if(blocks, [&](const CMatrix& b) {
    return std::all_of(family.begin(), family.end(), [&](const CMatrix& h) {
      return (b.adjoint() * h * b).norm() <= tol.threshold(h.norm());
    });
  });
  return blocks;
}

bool canonical_less(const CMatrix& a, const CMatrix& b) {
  constexpr double kTie = 1e-9;
  const CVector va = vec(a);
  const CVector vb = vec(b);
  for (Eigen::Index i = 0; i < va.size(); ++i) {
    const double diff = va(i).real() - vb(i).real();
    if (std::abs(diff) > kTie) return diff < 0;
  }
  for (Eigen::Index i = 0; i < va.size(); ++i) {
    const double diff = va(i).imag() - vb(i).imag();
    if (std::abs(diff) > kTie) return diff < 0;
  }
  return false;
}

TripotentEnumeration enumerate_central_tripotents(const Tro& z, std::size_t max_blocks) {
  const Tolerance tol = z.tolerance();
  const std::size_t d = z.ambient_dim();
  TripotentEnumeration out;
  const std::vector<CMatrix> blocks = center_blocks(z);
  out.block_count = blocks.size();
  if (blocks.size() > max_blocks) {
    throw CapExceeded("center has " + std::to_string(blocks.size()) +
                      " joint eigenblocks; the cap is " + std::to_string(max_blocks));
  }
  const auto m = static_cast<Eigen::Index>(blocks.size());

  // Coordinates alpha with sum alpha_k P_k in the center.
  std::vector<CMatrix> projections;
  CMatrix pframe(static_cast<Eigen::Index>(d * d), m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const CMatrix& b = blocks[static_cast<std::size_t>(k)];
    projections.push_back(b * b.adjoint());
    pframe.col(k) = vec(projections.back());
  }
  const CMatrix& qc = z.center().frame();
  const CMatrix outside = qc.cols() > 0 ? CMatrix(pframe - qc * (qc.adjoint() * pframe)) : pframe;
  const CMatrix allowed = nullspace(outside, tol.threshold(outside.norm()));
  const CMatrix to_allowed = allowed * allowed.adjoint();

  std::vector<int> pattern(static_cast<std::size_t>(m), -1);
  Eigen::VectorXcd alpha(m);
  for (;;) {
    for (Eigen::Index k = 0; k < m; ++k) alpha(k) = pattern[static_cast<std::size_t>(k)];
    const double miss = (alpha - to_allowed * alpha).norm();
    if (miss <= tol.threshold(alpha.norm())) {
      CMatrix u = zeros(d);
      for (Eigen::Index k = 0; k < m; ++k) {
        u += static_cast<double>(pattern[static_cast<std::size_t>(k)]) *
             projections[static_cast<std::size_t>(k)];
      }
      u = 0.5 * (u + u.adjoint());
      if (is_selfadjoint_tripotent(u, tol) && contains(z.center(), u, tol)) {
        out.tripotents.push_back(Tripotent{std::move(u), true});
      }
    }
    // Odometer over {-1, 0, 1}^m.
    Eigen::Index k = 0;
    while (k < m && pattern[static_cast<std::size_t>(k)] == 1) {
      pattern[static_cast<std::size_t>(k)] = -1;
      ++k;
    }
    if (k == m) break;
    ++pattern[static_cast<std::size_t>(k)];
  }
  std::sort(out.tripotents.begin(), out.tripotents.end(),
            [](const Tripotent& a, const Tripotent& b) { return canonical_less(a.u, b.u); });
  return out;
}

std::vector<Tripotent> maximal_central_tripotents(const Tro& z, std::size_t max_blocks) {
  const Tolerance tol = z.tolerance();
  std::vector<Tripotent> out;
  for (auto& t : enumerate_central_tripotents(z, max_blocks).tripotents) {
    if (t.u.norm() <= tol.threshold(1.0)) continue;
    const CMatrix p = t.u * t.u;
    const bool unit_on_center =
        std::all_of(z.center().basis().begin(), z.center().basis().end(),
                    [&](const CMatrix& c) { return (p * c - c).norm() <= tol.threshold(1.0); });
    if (unit_on_center) out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::size_t> leq_maximal_indices(const std::vector<Tripotent>& all, Tolerance tol) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].u.norm() <= tol.threshold(1.0)) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < all.size() && !dominated; ++j) {
      if (j == i) continue;
      dominated = leq(all[i], all[j], tol) && !leq(all[j], all[i], tol);
    }
    if (!dominated) out.push_back(i);
  }
  return out;
}

LowerBoundSearch brute_force_glb(const std::vector<Tripotent>& all, const Tripotent& u,
                                 const Tripotent& v, Tolerance tol) {
  LowerBoundSearch out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (leq(all[i], u, tol) && leq(all[i], v, tol)) out.lower_bounds.push_back(i);
  }
  for (std::size_t candidate : out.lower_bounds) {
    const bool above_all =
        std::all_of(out.lower_bounds.begin(), out.lower_bounds.end(),
                    [&](std::size_t w) { return leq(all[w], all[candidate], tol); });
    if (above_all) {
      out.greatest = candidate;
      break;
    }
  }
  return out;
}

}  // namespace otro

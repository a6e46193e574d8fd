#pragma once

/// \file ordering.hpp
/// Natural cones of a *-TRO and the classification built on them.
///
/// For a central selfadjoint tripotent u of Z, the natural cone is
///   { x in Z : u x u = x and u x >= 0 },
/// which coincides with { e u e* : e in Z }. The Peirce space u Z u is a
/// C*-algebra under x . y = x u y with unit u, and its positive cone is the
/// natural cone.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "otro/random.hpp"
#include "otro/tripotents.hpp"
#include "otro/tro.hpp"

namespace otro {

inline constexpr std::size_t kMaxMatrixLevel = 4;

bool cone_membership(const CMatrix& x, const Tripotent& u, const Tro& z);

/// X given as n*n row-major blocks, each in Z. Membership in the n-th matrix
/// level of the cone, tested with the amplified tripotent u (+) ... (+) u.
bool matrix_cone_membership(std::span<const CMatrix> blocks, std::size_t n,
                            const Tripotent& u, const Tro& z);

class NaturalCone {
 public:
  NaturalCone(Tripotent u, std::shared_ptr<const Tro> host);

  [[nodiscard]] const Tripotent& tripotent() const { return u_; }
  [[nodiscard]] const Tro& host() const { return *host_; }
  [[nodiscard]] bool contains(const CMatrix& x) const { return cone_membership(x, u_, *host_); }
  /// e u e* for a random e in the host.
  [[nodiscard]] CMatrix sample(Rng& rng) const;

 private:
  Tripotent u_;
  std::shared_ptr<const Tro> host_;
};

/// span{u z u : z in basis(Z)}.
Subspace peirce_space(const Tripotent& u, const Tro& z);

/// x u y. Throws if x or y is not fixed by compression with u^2.
CMatrix peirce_product(const CMatrix& x, const CMatrix& y, const Tripotent& u,
                       Tolerance tol = {});

struct Decomposition {
  Subspace algebra_part;     ///< u Z u, a C*-algebra under the Peirce product
  Subspace complement_part;  ///< {z in Z : z j = 0 for j in the algebra part}
  bool reconstructs = false;
  bool algebra_is_star_algebra = false;
};

/// Splits Z at a central selfadjoint tripotent. Throws std::invalid_argument
/// if u is not a central selfadjoint tripotent of Z.
Decomposition decompose(const Tro& z, const Tripotent& u);

/// Checks closure, identity law, and the C*-identity of the Peirce product
/// on the basis of u Z u and on `samples` random elements.
bool peirce_is_c_star_algebra(const Subspace& peirce, const Tripotent& u, Rng& rng,
                              std::size_t samples, Tolerance tol = {});

bool is_unorderable(const Tro& z);

struct MaximalSplit {
  std::size_t tripotent_index = 0;
  std::size_t algebra_dim = 0;
  std::size_t complement_dim = 0;
  bool reconstructs = false;
  bool algebra_is_star_algebra = false;
};

struct ClassificationReport {
  std::size_t ambient_dim = 0;
  std::size_t space_dim = 0;
  std::size_t square_dim = 0;
  std::size_t dim_of_center = 0;
  std::size_t block_count = 0;
  std::size_t natural_cone_count = 0;
  std::size_t maximal_cone_count = 0;
  bool is_unorderable = false;
  /// Indices into `tripotents` of the maximal (nonzero) central tripotents.
  std::vector<std::size_t> is_maximally_ordered_candidates;
  std::pair<std::size_t, std::size_t> decomposition_dims{0, 0};
  std::vector<MaximalSplit> splits;
  std::vector<Tripotent> tripotents;
  /// Maximal set via u^2 acting as the unit on the center agrees with the
  /// leq-maximal elements.
  bool maximal_sets_agree = false;
};

ClassificationReport classify(const Tro& z, std::size_t max_blocks = kMaxBlocks);

struct ConeIntersectionResult {
  bool holds = true;
  std::optional<CMatrix> counterexample;
};

/// Sampled check of cone(u) cap cone(v) = cone(u meet v) on Z.
ConeIntersectionResult cone_intersection_is_meet(const Tripotent& u, const Tripotent& v,
                                                 const Tro& z, Rng& rng,
                                                 std::size_t samples = 64);

/// p = (u^2 + u)/2 and q = (u^2 - u)/2.
std::pair<CMatrix, CMatrix> positive_negative_parts(const Tripotent& u);

}  // namespace otro

#pragma once

/// \file tro.hpp
/// Selfadjoint ternary rings of operators (*-TROs) inside M_d.
///
/// A *-TRO is a subspace Z with Z* = Z and x y* z in Z for all x, y, z in Z.
/// A Tro value is only ever built through certification, and carries its
/// square Z^2 = span{z w}, the ideal J(Z) = Z cap Z^2, and the center
/// {c in Z : a c = c a for all a in Z^2}.

#include <stdexcept>
#include <vector>

#include "otro/linalg.hpp"

namespace otro {

/// Raised when a subspace fails *-TRO certification, or when an iterative
/// construction does not settle.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// x y* z
CMatrix ternary_product(const CMatrix& x, const CMatrix& y, const CMatrix& z);

bool is_selfadjoint(const Subspace& s, Tolerance tol = {});
/// Exhaustive basis-triple check of x y* z in s.
bool is_tro(const Subspace& s, Tolerance tol = {});

class Tro {
 public:
  /// Certifies `space` (throws CertificationError otherwise) and computes
  /// the derived subspaces.
  static Tro certify(Subspace space, Tolerance tol = {});
  static Tro zero(std::size_t ambient_dim);

  [[nodiscard]] std::size_t ambient_dim() const { return space_.ambient_dim(); }
  [[nodiscard]] std::size_t dim() const { return space_.dim(); }
  [[nodiscard]] const Subspace& space() const { return space_; }
  [[nodiscard]] const Subspace& square() const { return square_; }
  [[nodiscard]] const Subspace& j_ideal() const { return j_ideal_; }
  [[nodiscard]] const Subspace& center() const { return center_; }
  [[nodiscard]] Tolerance tolerance() const { return tol_; }

 private:
  Tro(Subspace space, Tolerance tol);

  Subspace space_;
  Subspace square_;
  Subspace j_ideal_;
  Subspace center_;
  Tolerance tol_;
};

/// span{z w : z, w in basis(s)}; equals span{z w*} when s is selfadjoint.
Subspace square_of(const Subspace& s, Tolerance tol = {});

/// Smallest *-TRO containing the generators. All generators must be d x d;
/// an empty list yields the zero TRO of M_d.
Tro closure_from_generators(std::span<const CMatrix> gens, std::size_t ambient_dim,
                            Tolerance tol = {});

Subspace j_space(const Tro& z);
Subspace center(const Tro& z);

/// {z in Z : z j = 0 for all j in J}. Throws if J is not inside Z.
Subspace orthocomplement_ideal(const Tro& z, const Subspace& j);

/// Block-diagonal embedding of z1 (+) z2 in M_{d1+d2}.
Tro direct_sum(const Tro& z1, const Tro& z2);

/// Embeds a subspace of M_d into M_{d1+d2} at the given diagonal offset.
Subspace embed_block(const Subspace& s, std::size_t offset, std::size_t total_dim,
                     Tolerance tol = {});

/// Selfadjoint subspace N of Z with Z Z* N + Z N* Z + N Z* Z inside N.
bool is_ternary_ideal(const Tro& z, const Subspace& n, Tolerance tol = {});

/// Smallest ternary *-ideal of Z containing the given elements.
Subspace ideal_generated(const Tro& z, std::span<const CMatrix> elements);

}  // namespace otro

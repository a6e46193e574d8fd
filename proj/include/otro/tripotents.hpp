#pragma once

/// \file tripotents.hpp
/// Selfadjoint tripotents (u = u* = u^3) in the center of a *-TRO.
///
/// Central selfadjoint tripotents parameterize the natural orderings of a
/// finite-dimensional *-TRO. They are partially ordered by u <= v iff
/// u v u = u, with meet (u v u + v u v) / 2.
///
/// Enumeration relies on the selfadjoint part of the center being a
/// commuting Hermitian family: it is simultaneously block-diagonalized, every
/// central tripotent takes a value in {-1, 0, 1} on each joint eigenblock,
/// and the 3^m block patterns are filtered by membership in the center.

#include <stdexcept>
#include <vector>

#include "otro/linalg.hpp"
#include "otro/tro.hpp"

namespace otro {

/// Raised when the center has more joint eigenblocks than the configured cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kMaxBlocks = 12;

struct Tripotent {
  CMatrix u;
  bool is_central = false;

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(u.rows()); }
};

bool is_selfadjoint_tripotent(const CMatrix& u, Tolerance tol = {});

/// Certifies u (throws std::invalid_argument if it is not a selfadjoint
/// tripotent) and records whether it lies in the center of z.
Tripotent make_tripotent(const CMatrix& u, const Tro& z);

/// u <= v iff u v u = u.
bool leq(const Tripotent& u, const Tripotent& v, Tolerance tol = {});

/// (u v u + v u v) / 2. Throws if either input, or the result, fails
/// tripotent certification.
Tripotent meet(const Tripotent& u, const Tripotent& v, Tolerance tol = {});

/// Joint eigenblocks of the selfadjoint part of the center. Each entry is an
/// isometry whose columns span one block; blocks on which the whole center
/// vanishes are omitted.
std::vector<CMatrix> center_blocks(const Tro& z);

struct TripotentEnumeration {
  std::size_t block_count = 0;
  /// Sorted by matrix entries (real parts row-major, then imaginary parts).
  std::vector<Tripotent> tripotents;
};

TripotentEnumeration enumerate_central_tripotents(const Tro& z,
                                                  std::size_t max_blocks = kMaxBlocks);

/// Nonzero central tripotents u with u^2 c = c for every c in the center.
std::vector<Tripotent> maximal_central_tripotents(const Tro& z,
                                                  std::size_t max_blocks = kMaxBlocks);

/// The maximal elements of `all` under leq, zero excluded.
std::vector<std::size_t> leq_maximal_indices(const std::vector<Tripotent>& all,
                                             Tolerance tol = {});

/// Indices w with w <= u and w <= v, and the unique greatest one among them
/// (or npos if none is greatest).
struct LowerBoundSearch {
  std::vector<std::size_t> lower_bounds;
  std::size_t greatest = static_cast<std::size_t>(-1);
};
LowerBoundSearch brute_force_glb(const std::vector<Tripotent>& all, const Tripotent& u,
                                 const Tripotent& v, Tolerance tol = {});

/// Canonical total order used for enumeration output.
bool canonical_less(const CMatrix& a, const CMatrix& b);

}  // namespace otro

#pragma once

/// \file commutative.hpp
/// Commutative involutive ternary systems on finite spaces.
///
/// A FiniteInvolutiveSpace is a finite point set with a topology and an
/// involution tau mapping opens to opens. Its section space
///   W = { f : f(tau w) = -f(w) }
/// is a commutative *-TRO (realized on the diagonal of M_n), and its natural
/// cones correspond to open sets U with U cap tau(U) empty.
///
/// Subsets are bitmasks over at most 30 points.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "otro/linalg.hpp"
#include "otro/tro.hpp"

namespace otro {

using PointSet = std::uint32_t;

inline constexpr std::size_t kMaxPoints = 30;

class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FiniteInvolutiveSpace {
 public:
  /// Validates the involution, the topology axioms, and tau-compatibility.
  /// `opens` need not list the empty set or the whole space.
  FiniteInvolutiveSpace(std::size_t points, std::vector<PointSet> opens, std::vector<std::size_t> tau);

  static FiniteInvolutiveSpace discrete(std::vector<std::size_t> tau);
  static FiniteInvolutiveSpace indiscrete(std::vector<std::size_t> tau);

  [[nodiscard]] std::size_t size() const { return points_; }
  [[nodiscard]] PointSet all() const { return all_; }
  /// Sorted ascending.
  [[nodiscard]] const std::vector<PointSet>& opens() const { return opens_; }
  [[nodiscard]] const std::vector<std::size_t>& tau() const { return tau_; }

  [[nodiscard]] bool is_open(PointSet s) const;
  [[nodiscard]] PointSet image(PointSet s) const;  ///< tau(s)
  [[nodiscard]] PointSet interior(PointSet s) const;
  [[nodiscard]] PointSet closure(PointSet s) const;
  /// closure(s) minus s, for open s.
  [[nodiscard]] PointSet boundary(PointSet s) const;
  [[nodiscard]] bool is_discrete() const;
  [[nodiscard]] bool is_t0() const;
  [[nodiscard]] bool is_free() const;
  /// One representative per free orbit {w, tau w}, the smaller index first.
  [[nodiscard]] std::vector<std::size_t> free_orbit_representatives() const;

 private:
  std::size_t points_;
  PointSet all_;
  std::vector<PointSet> opens_;
  std::vector<std::size_t> tau_;
};

/// Real functions on the points, one value per point.
using Section = Eigen::VectorXd;

struct SectionSpace {
  FiniteInvolutiveSpace host;
  /// e_w - e_{tau w}, one per free orbit.
  std::vector<Section> basis;

  [[nodiscard]] std::size_t dim() const { return basis.size(); }
  [[nodiscard]] bool contains(const Section& f, double tol = 1e-9) const;
  /// Diagonal realization in M_n.
  [[nodiscard]] CMatrix to_matrix(const Section& f) const;
};

SectionSpace build_w(const FiniteInvolutiveSpace& space);

std::vector<PointSet> antisymmetric_open_sets(const FiniteInvolutiveSpace& space);

/// The cone { f in W : f >= 0 on U, f = 0 off U cup tau(U) }.
class ConeOfU {
 public:
  ConeOfU(const SectionSpace& w, PointSet u);

  [[nodiscard]] PointSet u() const { return u_; }
  [[nodiscard]] PointSet vanishing_set() const { return vanish_; }
  [[nodiscard]] bool contains(const Section& f, double tol = 1e-9) const;
  /// Extreme generators e_w - e_{tau w} for w in U.
  [[nodiscard]] const std::vector<Section>& generators() const { return generators_; }
  [[nodiscard]] std::size_t span_dim() const { return generators_.size(); }

 private:
  std::vector<std::size_t> tau_;
  PointSet u_;
  PointSet vanish_;
  std::vector<Section> generators_;
};

ConeOfU cone_of_u(const SectionSpace& w, PointSet u);

/// Union of the strict positivity sets of the given cone elements.
PointSet recover_u_from_cone(const SectionSpace& w, const std::vector<Section>& cone_elements,
                             double tol = 1e-9);
PointSet recover_u_from_cone(const SectionSpace& w, const ConeOfU& cone);

struct MaximalityVerdict {
  bool boundary_is_complement = false;          ///< C = Bdy(U)
  bool boundary_of_negative_is_complement = false;  ///< C = Bdy(-U)
  bool boundaries_agree_and_thin = false;       ///< Bdy(U) = Bdy(-U), int C empty
  bool no_larger_antisymmetric_open = false;
  /// A strictly larger antisymmetric open set when one exists.
  std::optional<PointSet> larger;

  [[nodiscard]] bool consistent() const;
  /// Conjunction of the four conditions.
  [[nodiscard]] bool maximal() const;
};

MaximalityVerdict is_maximal_u(const FiniteInvolutiveSpace& space, PointSet u);

/// U1 in U2 iff cone(U1) in cone(U2), over all antisymmetric open pairs.
bool cone_inclusion_matches_set_inclusion(const FiniteInvolutiveSpace& space);

/// Diagonal *-TRO realizing W in M_n.
Tro embed_as_tro(const SectionSpace& w);

/// { f in W : f = 0 on C } realized in M_n. C must be closed and symmetric.
Subspace symmetric_ideal(const SectionSpace& w, PointSet closed_symmetric);

/// Every topology on `tau.size()` points for which tau is a homeomorphism,
/// each once (as a sorted open-set family).
std::vector<FiniteInvolutiveSpace> all_compatible_topologies(const std::vector<std::size_t>& tau);

std::string format_set(PointSet s, std::size_t points);

}  // namespace otro

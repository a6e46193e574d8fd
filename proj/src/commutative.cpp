#include "otro/commutative.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace otro {

namespace {

constexpr std::size_t kMaxDiscretePoints = 16;
constexpr std::size_t kMaxEnumeratedPoints = 6;

PointSet bit(std::size_t i) { return PointSet{1} << i; }

bool has(PointSet s, std::size_t i) { return (s & bit(i)) != 0; }

void validate_tau(const std::vector<std::size_t>& tau) {
  if (tau.size() > kMaxPoints) throw TopologyError("at most 30 points are supported");
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] >= tau.size()) {
      throw TopologyError("tau maps point " + std::to_string(i) + " outside the space");
    }
    if (tau[tau[i]] != i) {
      throw TopologyError("tau is not an involution at point " + std::to_string(i));
    }
  }
}

Section orbit_section(std::size_t n, std::size_t w, std::size_t tw) {
  Section f = Section::Zero(static_cast<Eigen::Index>(n));
  f(static_cast<Eigen::Index>(w)) = 1.0;
  f(static_cast<Eigen::Index>(tw)) = -1.0;
  return f;
}

}  // namespace

// --- FiniteInvolutiveSpace --------------------------------------------------

FiniteInvolutiveSpace::FiniteInvolutiveSpace(std::size_t points, std::vector<PointSet> opens,
                                             std::vector<std::size_t> tau)
    : points_(points), all_(points == 0 ? 0 : static_cast<PointSet>((std::uint64_t{1} << points) - 1)),
      tau_(std::move(tau)) {
  if (tau_.size() != points_) throw TopologyError("tau must list one image per point");
  validate_tau(tau_);
  opens.push_back(0);
  opens.push_back(all_);
  for (PointSet u : opens) {
    if ((u & ~all_) != 0) throw TopologyError("open set " + format_set(u, 32) + " has points outside the space");
  }
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  opens_ = std::move(opens);
  for (PointSet a : opens_) {
    for (PointSet b : opens_) {
      if (!is_open(a | b)) {
        throw TopologyError("opens are not closed under union: " + format_set(a, points_) +
                            " and " + format_set(b, points_));
      }
      if (!is_open(a & b)) {
        throw TopologyError("opens are not closed under intersection: " + format_set(a, points_) +
                            " and " + format_set(b, points_));
      }
    }
    if (!is_open(image(a))) {
      throw TopologyError("tau maps the open set " + format_set(a, points_) + " to a non-open set");
    }
  }
}

FiniteInvolutiveSpace FiniteInvolutiveSpace::discrete(std::vector<std::size_t> tau) {
  const std::size_t n = tau.size();
  if (n > kMaxDiscretePoints) throw TopologyError("discrete spaces are limited to 16 points");
  std::vector<PointSet> opens;
  opens.reserve(std::size_t{1} << n);
  for (PointSet s = 0; s < (PointSet{1} << n); ++s) opens.push_back(s);
  return FiniteInvolutiveSpace(n, std::move(opens), std::move(tau));
}

FiniteInvolutiveSpace FiniteInvolutiveSpace::indiscrete(std::vector<std::size_t> tau) {
  const std::size_t n = tau.size();
  return FiniteInvolutiveSpace(n, {}, std::move(tau));
}

bool FiniteInvolutiveSpace::is_open(PointSet s) const {
  return std::binary_search(opens_.begin(), opens_.end(), s);
}

PointSet FiniteInvolutiveSpace::image(PointSet s) const {
  PointSet out = 0;
  for (std::size_t i = 0; i < points_; ++i) {
    if (has(s, i)) out |= bit(tau_[i]);
  }
  return out;
}

PointSet FiniteInvolutiveSpace::interior(PointSet s) const {
  PointSet out = 0;
  for (PointSet u : opens_) {
    if ((u & ~s) == 0) out |= u;
  }
  return out;
}

PointSet FiniteInvolutiveSpace::closure(PointSet s) const {
  return all_ & ~interior(all_ & ~s);
}

PointSet FiniteInvolutiveSpace::boundary(PointSet s) const { return closure(s) & ~s; }

bool FiniteInvolutiveSpace::is_discrete() const {
  for (std::size_t i = 0; i < points_; ++i) {
    if (!is_open(bit(i))) return false;
  }
  return true;
}

bool FiniteInvolutiveSpace::is_t0() const {
  for (std::size_t i = 0; i < points_; ++i) {
    for (std::size_t j = i + 1; j < points_; ++j) {
      const bool separated = std::any_of(opens_.begin(), opens_.end(), [&](PointSet u) {
        return has(u, i) != has(u, j);
      });
      if (!separated) return false;
    }
  }
  return true;
}

bool FiniteInvolutiveSpace::is_free() const {
  for (std::size_t i = 0; i < points_; ++i) {
    if (tau_[i] == i) return false;
  }
  return true;
}

std::vector<std::size_t> FiniteInvolutiveSpace::free_orbit_representatives() const {
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < points_; ++i) {
    if (tau_[i] > i) reps.push_back(i);
  }
  return reps;
}

// --- sections and cones ----------------------------------------------------

bool SectionSpace::contains(const Section& f, double tol) const {
  if (static_cast<std::size_t>(f.size()) != host.size()) return false;
  for (std::size_t i = 0; i < host.size(); ++i) {
    const auto a = static_cast<Eigen::Index>(i);
    const auto b = static_cast<Eigen::Index>(host.tau()[i]);
    if (std::abs(f(a) + f(b)) > tol * std::max(1.0, f.cwiseAbs().maxCoeff())) return false;
  }
  return true;
}

CMatrix SectionSpace::to_matrix(const Section& f) const {
  if (static_cast<std::size_t>(f.size()) != host.size()) {
    throw DimensionError("section has the wrong number of values");
  }
  return CMatrix(f.cast<Complex>().asDiagonal());
}

SectionSpace build_w(const FiniteInvolutiveSpace& space) {
  SectionSpace w{space, {}};
  for (std::size_t rep : space.free_orbit_representatives()) {
    w.basis.push_back(orbit_section(space.size(), rep, space.tau()[rep]));
  }
  return w;
}

std::vector<PointSet> antisymmetric_open_sets(const FiniteInvolutiveSpace& space) {
  std::vector<PointSet> out;
  for (PointSet u : space.opens()) {
    if ((u & space.image(u)) == 0) out.push_back(u);
  }
  return out;
}

ConeOfU::ConeOfU(const SectionSpace& w, PointSet u) : tau_(w.host.tau()), u_(u) {
  const FiniteInvolutiveSpace& space = w.host;
  if (!space.is_open(u)) throw TopologyError("cone_of_U: " + format_set(u, space.size()) + " is not open");
  if ((u & space.image(u)) != 0) {
    throw TopologyError("cone_of_U: " + format_set(u, space.size()) + " is not antisymmetric");
  }
  vanish_ = space.all() & ~(u | space.image(u));
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (has(u, i)) generators_.push_back(orbit_section(space.size(), i, tau_[i]));
  }
}

bool ConeOfU::contains(const Section& f, double tol) const {
  if (static_cast<std::size_t>(f.size()) != tau_.size()) return false;
  const double scale = tol * std::max(1.0, f.size() > 0 ? f.cwiseAbs().maxCoeff() : 0.0);
  for (std::size_t i = 0; i < tau_.size(); ++i) {
    const double value = f(static_cast<Eigen::Index>(i));
    if (std::abs(value + f(static_cast<Eigen::Index>(tau_[i]))) > scale) return false;
    if (has(u_, i) && value < -scale) return false;
    if (has(vanish_, i) && std::abs(value) > scale) return false;
  }
  return true;
}

ConeOfU cone_of_u(const SectionSpace& w, PointSet u) { return ConeOfU(w, u); }

PointSet recover_u_from_cone(const SectionSpace& w, const std::vector<Section>& cone_elements,
                             double tol) {
  PointSet u = 0;
  for (const auto& g : cone_elements) {
    for (std::size_t i = 0; i < w.host.size(); ++i) {
      if (g(static_cast<Eigen::Index>(i)) > tol) u |= bit(i);
    }
  }
  return u;
}

PointSet recover_u_from_cone(const SectionSpace& w, const ConeOfU& cone) {
  return recover_u_from_cone(w, cone.generators());
}

bool MaximalityVerdict::consistent() const {
  return boundary_is_complement == boundary_of_negative_is_complement &&
         boundary_is_complement == boundaries_agree_and_thin &&
         boundary_is_complement == no_larger_antisymmetric_open;
}

bool MaximalityVerdict::maximal() const {
  return boundary_is_complement && boundary_of_negative_is_complement &&
         boundaries_agree_and_thin && no_larger_antisymmetric_open;
}

MaximalityVerdict is_maximal_u(const FiniteInvolutiveSpace& space, PointSet u) {
  if (!space.is_open(u) || (u & space.image(u)) != 0) {
    throw TopologyError("is_maximal_U: " + format_set(u, space.size()) +
                        " is not an antisymmetric open set");
  }
  const PointSet neg = space.image(u);
  const PointSet rest = space.all() & ~(u | neg);
  const PointSet bdy = space.boundary(u);
  const PointSet bdy_neg = space.boundary(neg);

  MaximalityVerdict v;
  v.boundary_is_complement = rest == bdy;
  v.boundary_of_negative_is_complement = rest == bdy_neg;
  v.boundaries_agree_and_thin = bdy == bdy_neg && space.interior(rest) == 0;
  for (PointSet other : antisymmetric_open_sets(space)) {
    if (other != u && (u & ~other) == 0) {
      v.larger = other;
      break;
    }
  }
  v.no_larger_antisymmetric_open = !v.larger.has_value();
  return v;
}

bool cone_inclusion_matches_set_inclusion(const FiniteInvolutiveSpace& space) {
  const SectionSpace w = build_w(space);
  const std::vector<PointSet> sets = antisymmetric_open_sets(space);
  std::vector<ConeOfU> cones;
  cones.reserve(sets.size());
  for (PointSet u : sets) cones.emplace_back(w, u);
  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (std::size_t b = 0; b < sets.size(); ++b) {
      const bool set_inclusion = (sets[a] & ~sets[b]) == 0;
      const bool cone_inclusion =
          std::all_of(cones[a].generators().begin(), cones[a].generators().end(),
                      [&](const Section& g) { return cones[b].contains(g); });
      if (set_inclusion != cone_inclusion) return false;
    }
  }
  return true;
}

Tro embed_as_tro(const SectionSpace& w) {
  const std::size_t n = w.host.size();
  if (w.basis.empty()) return Tro::zero(n);
  std::vector<CMatrix> gens;
  gens.reserve(w.basis.size());
  for (const auto& f : w.basis) gens.push_back(w.to_matrix(f));
  return closure_from_generators(gens, n);
}

Subspace symmetric_ideal(const SectionSpace& w, PointSet closed_symmetric) {
  const FiniteInvolutiveSpace& space = w.host;
  if ((closed_symmetric & ~space.all()) != 0) throw TopologyError("set has points outside the space");
  if (!space.is_open(space.all() & ~closed_symmetric)) {
    throw TopologyError(format_set(closed_symmetric, space.size()) + " is not closed");
  }
  if (space.image(closed_symmetric) != closed_symmetric) {
    throw TopologyError(format_set(closed_symmetric, space.size()) + " is not symmetric");
  }
  Subspace out(space.size());
  for (const auto& f : w.basis) {
    bool vanishes = true;
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (has(closed_symmetric, i) && f(static_cast<Eigen::Index>(i)) != 0.0) vanishes = false;
    }
    if (vanishes) out.adjoin(w.to_matrix(f), Tolerance{});
  }
  return out;
}

std::vector<FiniteInvolutiveSpace> all_compatible_topologies(const std::vector<std::size_t>& tau) {
  validate_tau(tau);
  const std::size_t n = tau.size();
  if (n > kMaxEnumeratedPoints) {
    throw TopologyError("topology enumeration is limited to 6 points");
  }
  // Topologies on a finite set correspond to preorders (x <= y iff every open
  // set containing x contains y). tau-compatible topologies are the preorders
  // invariant under tau, so enumerate unions of tau-orbits of ordered pairs.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> orbits;
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y || seen[x][y]) continue;
      std::vector<std::pair<std::size_t, std::size_t>> orbit{{x, y}};
      seen[x][y] = true;
      if (!seen[tau[x]][tau[y]]) {
        orbit.emplace_back(tau[x], tau[y]);
        seen[tau[x]][tau[y]] = true;
      }
      orbits.push_back(std::move(orbit));
    }
  }

  std::vector<FiniteInvolutiveSpace> out;
  const std::size_t patterns = std::size_t{1} << orbits.size();
  std::vector<PointSet> up(n);
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    for (std::size_t x = 0; x < n; ++x) up[x] = bit(x);
    for (std::size_t o = 0; o < orbits.size(); ++o) {
      if (((mask >> o) & 1U) == 0) continue;
      for (const auto& [x, y] : orbits[o]) up[x] |= bit(y);
    }
    bool transitive = true;
    for (std::size_t x = 0; x < n && transitive; ++x) {
      for (std::size_t y = 0; y < n && transitive; ++y) {
        if (has(up[x], y) && (up[y] & ~up[x]) != 0) transitive = false;
      }
    }
    if (!transitive) continue;
    std::vector<PointSet> opens;
    for (PointSet s = 0; s < (PointSet{1} << n); ++s) {
      bool upward = true;
      for (std::size_t x = 0; x < n && upward; ++x) {
        if (has(s, x) && (up[x] & ~s) != 0) upward = false;
      }
      if (upward) opens.push_back(s);
    }
    out.emplace_back(n, std::move(opens), tau);
  }
  return out;
}

std::string format_set(PointSet s, std::size_t points) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t i = 0; i < std::min<std::size_t>(points, 32); ++i) {
    if (!has(s, i)) continue;
    if (!first) os << ',';
    os << i;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace otro

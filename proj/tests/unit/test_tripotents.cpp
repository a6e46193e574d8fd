#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "otro/tripotents.hpp"
#include "support/generators.hpp"

using namespace otro;
using namespace otro::testing;

namespace {

Tripotent t(const CMatrix& u) { return Tripotent{u, true}; }

// All sign vectors in {-1,0,1}^n, as diagonal matrices.
std::vector<CMatrix> sign_diagonals(std::size_t n, bool zero_allowed) {
  std::vector<CMatrix> out;
  const std::size_t base = zero_allowed ? 3 : 2;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= base;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<double> v(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t digit = c % base;
      c /= base;
      v[i] = zero_allowed ? static_cast<double>(digit) - 1.0 : (digit == 0 ? -1.0 : 1.0);
    }
    out.push_back(diagonal(v));
  }
  return out;
}

bool same_set(const std::vector<Tripotent>& got, const std::vector<CMatrix>& want) {
  if (got.size() != want.size()) return false;
  for (const auto& w : want) {
    bool found = false;
    for (const auto& g : got) found = found || approx_equal(g.u, w);
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("is_selfadjoint_tripotent") {
  CHECK(is_selfadjoint_tripotent(identity(3)));
  CHECK(is_selfadjoint_tripotent(diag_of({1, -1, 0})));
  CHECK_FALSE(is_selfadjoint_tripotent(diag_of({2, 0})));
  CHECK_FALSE(is_selfadjoint_tripotent(unit(2, 0, 1)));  // u^3 = u fails, u != u*
  Rng rng(4);
  const CMatrix v = random_unitary(3, rng);
  CHECK(is_selfadjoint_tripotent(CMatrix(v * diag_of({1, -1, 0}) * v.adjoint())));
}

TEST_CASE("leq") {
  CHECK(leq(t(diag_of({1, 0})), t(diag_of({1, 1}))));
  CHECK(leq(t(diag_of({1, 0})), t(diag_of({1, -1}))));
  CHECK_FALSE(leq(t(diag_of({1, 1})), t(diag_of({1, 0}))));
}

TEST_CASE("meet") {
  CHECK(approx_equal(meet(t(diag_of({1, 1})), t(diag_of({1, -1}))).u, diag_of({1, 0})));
  const Tripotent u = t(diag_of({1, -1, 0}));
  CHECK(approx_equal(meet(u, u).u, u.u));
  CHECK(approx_equal(meet(t(diag_of({1, 0})), t(diag_of({-1, 0}))).u, zeros(2)));
  CHECK_THROWS_AS(meet(t(diag_of({2, 0})), u), std::invalid_argument);
}

TEST_CASE("enumeration on small hosts") {
  const TripotentEnumeration m2 = enumerate_central_tripotents(full_algebra(2));
  CHECK(m2.block_count == 1);
  CHECK(same_set(m2.tripotents, {-identity(2), zeros(2), identity(2)}));

  const TripotentEnumeration off = enumerate_central_tripotents(off_diagonal_m2());
  CHECK(off.block_count == 0);
  CHECK(same_set(off.tripotents, {zeros(2)}));

  for (std::size_t n = 1; n <= 4; ++n) {
    const TripotentEnumeration e = enumerate_central_tripotents(diagonal_tro(n));
    CHECK(e.tripotents.size() == static_cast<std::size_t>(std::pow(3, n)));
    CHECK(same_set(e.tripotents, sign_diagonals(n, true)));
  }
}

TEST_CASE("enumeration is sorted and every entry is certified") {
  const Tro z = diagonal_tro(3);
  const TripotentEnumeration e = enumerate_central_tripotents(z);
  for (std::size_t i = 0; i + 1 < e.tripotents.size(); ++i) {
    CHECK(canonical_less(e.tripotents[i].u, e.tripotents[i + 1].u));
  }
  for (const auto& u : e.tripotents) {
    CHECK(u.is_central);
    CHECK(is_selfadjoint_tripotent(u.u));
    CHECK(contains(z.center(), u.u));
  }
}

TEST_CASE("block cap") {
  CHECK_THROWS_AS(enumerate_central_tripotents(diagonal_tro(13)), CapExceeded);
  CHECK_THROWS_AS(enumerate_central_tripotents(diagonal_tro(4), 3), CapExceeded);
}

TEST_CASE("maximal central tripotents") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto m = maximal_central_tripotents(diagonal_tro(n));
    CHECK(same_set(m, sign_diagonals(n, false)));
  }
  CHECK(same_set(maximal_central_tripotents(full_algebra(2)), {identity(2), -identity(2)}));
  CHECK(maximal_central_tripotents(off_diagonal_m2()).empty());
}

TEST_CASE("lattice properties on D_3") {
  const auto all = enumerate_central_tripotents(diagonal_tro(3)).tripotents;
  const std::size_t n = all.size();
  for (std::size_t a = 0; a < n; ++a) {
    CHECK(leq(all[a], all[a]));
    const Tripotent neg = t(-all[a].u);
    for (std::size_t b = 0; b < n; ++b) {
      const bool ab = leq(all[a], all[b]);
      if (ab && leq(all[b], all[a])) CHECK(a == b);
      CHECK(ab == leq(neg, t(-all[b].u)));
      for (std::size_t c = 0; c < n; ++c) {
        if (ab && leq(all[b], all[c])) CHECK(leq(all[a], all[c]));
      }
      CHECK(approx_equal(meet(all[a], all[b]).u, meet(all[b], all[a]).u));
    }
  }
}

TEST_CASE("meet equals the entrywise sign glb on diagonal hosts") {
  // For diagonal sign vectors, w <= u iff each w_i is 0 or u_i, so the
  // greatest lower bound keeps the entries where u and v agree.
  const auto all = enumerate_central_tripotents(diagonal_tro(3)).tripotents;
  for (const auto& u : all) {
    for (const auto& v : all) {
      std::vector<double> g(3);
      for (Eigen::Index i = 0; i < 3; ++i) {
        const double ui = u.u(i, i).real();
        const double vi = v.u(i, i).real();
        g[static_cast<std::size_t>(i)] = ui == vi ? ui : 0.0;
      }
      CHECK(approx_equal(meet(u, v).u, diagonal(g)));
      const LowerBoundSearch s = brute_force_glb(all, u, v);
      REQUIRE(s.greatest < all.size());
      CHECK(approx_equal(all[s.greatest].u, diagonal(g)));
    }
  }
}

TEST_CASE("structured random tros") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const StructuredTro s = random_structured_tro(5, rng);
    CAPTURE(trial);
    const TripotentEnumeration e = enumerate_central_tripotents(s.tro);
    CHECK(e.block_count == s.eigenblocks);
    CHECK(e.tripotents.size() == static_cast<std::size_t>(std::pow(3, s.blocks)));
    CHECK(maximal_central_tripotents(s.tro).size() ==
          (s.blocks == 0 ? 0 : static_cast<std::size_t>(std::pow(2, s.blocks))));
    // closed under negation
    for (const auto& u : e.tripotents) {
      bool found = false;
      for (const auto& w : e.tripotents) found = found || approx_equal(w.u, -u.u);
      CHECK(found);
    }
    // leq-maximal elements coincide with the unitary-in-center criterion
    const auto idx = leq_maximal_indices(e.tripotents);
    std::vector<Tripotent> by_leq;
    for (std::size_t i : idx) by_leq.push_back(e.tripotents[i]);
    std::vector<CMatrix> by_unit;
    for (const auto& m : maximal_central_tripotents(s.tro)) by_unit.push_back(m.u);
    CHECK(same_set(by_leq, by_unit));
  }
}

TEST_CASE("make_tripotent") {
  const Tro d2 = diagonal_tro(2);
  CHECK(make_tripotent(diag_of({1, -1}), d2).is_central);
  CHECK_FALSE(make_tripotent(unit(2, 0, 1) + unit(2, 1, 0), d2).is_central);
  CHECK_THROWS_AS(make_tripotent(diag_of({2, 0}), d2), std::invalid_argument);
}

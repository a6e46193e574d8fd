#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "otro/tro.hpp"
#include "support/generators.hpp"

using namespace otro;
using namespace otro::testing;

namespace {

const CMatrix kFlip = unit(2, 0, 1) + unit(2, 1, 0);

bool commutes_with_all(const CMatrix& c, const Subspace& s) {
  for (const auto& a : s.basis()) {
    if ((a * c - c * a).norm() > 1e-8) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("ternary_product") {
  CHECK(ternary_product(identity(2), identity(2), identity(2)) == identity(2));
  CHECK(ternary_product(unit(2, 0, 1), unit(2, 0, 1), unit(2, 0, 1)) == unit(2, 0, 1));
  CHECK(ternary_product(unit(4, 0, 1), unit(4, 2, 3), unit(4, 0, 1)).norm() == 0.0);
  CHECK_THROWS_AS(ternary_product(identity(2), identity(3), identity(2)), DimensionError);
}

TEST_CASE("closure_from_generators") {
  SUBCASE("flip cubes to itself") {
    const Tro z = closure_from_generators(std::vector<CMatrix>{kFlip}, 2);
    CHECK(z.dim() == 1);
    CHECK(contains(z.space(), kFlip));
  }
  SUBCASE("a single matrix unit") {
    // Odd products of off-diagonal units stay off-diagonal, so the closure
    // is the off-diagonal corner rather than M_2.
    const Tro z = closure_from_generators(std::vector<CMatrix>{unit(2, 0, 1)}, 2);
    const Tro oracle = off_diagonal_m2();
    CHECK(same_span(z.space(), oracle.space()));
  }
  SUBCASE("identity") {
    const Tro z = closure_from_generators(std::vector<CMatrix>{identity(3)}, 3);
    CHECK(z.dim() == 1);
  }
  SUBCASE("empty generators give the zero tro") {
    const Tro z = closure_from_generators(std::vector<CMatrix>{}, 3);
    CHECK(z.dim() == 0);
    CHECK(z.center().dim() == 0);
  }
  SUBCASE("idempotent on certified tros") {
    Rng rng(101);
    for (int i = 0; i < 10; ++i) {
      const StructuredTro s = random_structured_tro(5, rng);
      const Tro again = closure_from_generators(s.tro.space().basis(), s.tro.ambient_dim());
      CHECK(same_span(again.space(), s.tro.space()));
    }
  }
}

TEST_CASE("brute force closure agrees") {
  // Oracle: naive fixed point over all products of current spanning list,
  // without the library's round structure.
  Rng rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t d = 2 + trial % 2;
    std::vector<CMatrix> gens{random_hermitian(d, rng)};
    gens.push_back(unit(d, 0, 1));
    std::vector<CMatrix> span = gens;
    for (const auto& g : gens) span.push_back(g.adjoint());
    std::size_t last = 0;
    for (;;) {
      Subspace s = orthonormalize(span, d);
      if (s.dim() == last) break;
      last = s.dim();
      std::vector<CMatrix> next = s.basis();
      for (const auto& x : s.basis()) {
        next.push_back(x.adjoint());
        for (const auto& y : s.basis()) {
          for (const auto& w : s.basis()) next.push_back(x * y.adjoint() * w);
        }
      }
      span = next;
    }
    const Tro z = closure_from_generators(gens, d);
    CHECK(z.dim() == last);
  }
}

TEST_CASE("j_space") {
  CHECK(full_algebra(2).j_ideal().dim() == 4);
  const Tro flip = tro_of({kFlip}, 2);
  CHECK(flip.square().dim() == 1);
  CHECK(contains(flip.square(), identity(2)));
  CHECK(flip.j_ideal().dim() == 0);
  CHECK(diagonal_tro(2).j_ideal().dim() == 2);
}

TEST_CASE("center") {
  const Subspace c = full_algebra(2).center();
  CHECK(c.dim() == 1);
  CHECK(contains(c, identity(2)));
  CHECK(off_diagonal_m2().center().dim() == 0);
  CHECK(diagonal_tro(4).center().dim() == 4);
}

TEST_CASE("orthocomplement_ideal") {
  const Tro m2 = full_algebra(2);
  CHECK(orthocomplement_ideal(m2, m2.space()).dim() == 0);
  const Tro d2 = diagonal_tro(2);
  const Subspace e11 = orthonormalize(std::vector<CMatrix>{unit(2, 0, 0)}, 2);
  const Subspace perp = orthocomplement_ideal(d2, e11);
  CHECK(perp.dim() == 1);
  CHECK(contains(perp, unit(2, 1, 1)));
  CHECK(same_span(orthocomplement_ideal(d2, Subspace(2)), d2.space()));
  const Subspace outside = orthonormalize(std::vector<CMatrix>{unit(2, 0, 1)}, 2);
  CHECK_THROWS_AS(orthocomplement_ideal(d2, outside), std::invalid_argument);
}

TEST_CASE("direct_sum") {
  const Tro m1 = full_algebra(1);
  CHECK(same_span(direct_sum(m1, m1).space(), diagonal_tro(2).space()));
  const Tro m2z = direct_sum(full_algebra(2), Tro::zero(0));
  CHECK(m2z.ambient_dim() == 2);
  CHECK(m2z.dim() == 4);
  CHECK(same_span(direct_sum(diagonal_tro(2), diagonal_tro(2)).space(), diagonal_tro(4).space()));
  Rng rng(9);
  for (int i = 0; i < 5; ++i) {
    const StructuredTro a = random_structured_tro(3, rng);
    const StructuredTro b = random_structured_tro(3, rng);
    CHECK(direct_sum(a.tro, b.tro).center().dim() == a.center_dim + b.center_dim);
  }
}

TEST_CASE("is_tro and is_selfadjoint") {
  const auto span = [](std::vector<CMatrix> m) { return orthonormalize(m, 2); };
  CHECK(is_tro(span({kFlip})));
  CHECK(is_selfadjoint(span({kFlip})));
  CHECK(is_tro(span({unit(2, 0, 1)})));
  CHECK_FALSE(is_selfadjoint(span({unit(2, 0, 1)})));
  // x = E11 + E12 has x x* x = 2x, so its span is closed.
  const CMatrix x = unit(2, 0, 0) + unit(2, 0, 1);
  CHECK(approx_equal(ternary_product(x, x, x), 2.0 * x));
  CHECK(is_tro(span({x})));
  CHECK_FALSE(is_selfadjoint(span({x})));
  // I I* E12 = E12 but E12 E12* I = E11 leaves span{I, E12}.
  CHECK_FALSE(is_tro(span({identity(2), unit(2, 0, 1)})));
  CHECK_THROWS_AS(Tro::certify(span({unit(2, 0, 1)})), CertificationError);
}

TEST_CASE("structural invariants on random tros") {
  Rng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const StructuredTro s = random_structured_tro(5, rng);
    const Tro& z = s.tro;
    CAPTURE(trial);
    CHECK(z.dim() == s.dim);
    CHECK(z.center().dim() == s.center_dim);
    CHECK(z.j_ideal().dim() == s.j_dim);
    CHECK(is_tro(z.space()));
    CHECK(is_selfadjoint(z.space()));
    CHECK(contains(z.space(), z.j_ideal()));
    CHECK(contains(z.square(), z.j_ideal()));

    // the center is a TRO and commutes with all of Z
    CHECK(is_tro(z.center()));
    for (const auto& c : z.center().basis()) CHECK(commutes_with_all(c, z.space()));

    // J is a two-sided ideal of Z^2
    for (const auto& a : z.square().basis()) {
      for (const auto& j : z.j_ideal().basis()) {
        CHECK(contains(z.j_ideal(), CMatrix(a * j)));
        CHECK(contains(z.j_ideal(), CMatrix(j * a)));
      }
    }

    // Z = J + J-perp
    const Subspace perp = orthocomplement_ideal(z, z.j_ideal());
    CHECK(same_span(span_union(z.j_ideal(), perp), z.space()));
    CHECK(is_ternary_ideal(z, perp));
  }
}

TEST_CASE("ideal_generated") {
  const Tro d3 = diagonal_tro(3);
  const std::vector<CMatrix> one{unit(3, 1, 1)};
  const Subspace n = ideal_generated(d3, one);
  CHECK(n.dim() == 1);
  CHECK(is_ternary_ideal(d3, n));
  const std::vector<CMatrix> e12{unit(2, 0, 1)};
  CHECK(ideal_generated(full_algebra(2), e12).dim() == 4);
}

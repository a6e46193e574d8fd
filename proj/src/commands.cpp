#include "otro/commands.hpp"

#include <algorithm>
#include <functional>

#include "otro/commutative.hpp"
#include "otro/document.hpp"
#include "otro/morphisms.hpp"
#include "otro/ordering.hpp"
#include "otro/tro.hpp"

namespace otro {

namespace {

Tolerance resolve_tolerance(const InputDocument& doc, const CommandOptions& options) {
  if (options.tolerance) return Tolerance{*options.tolerance};
  if (doc.tolerance) return Tolerance{*doc.tolerance};
  return Tolerance{};
}

void header(ReportWriter& w, std::string_view command, std::string_view input, Tolerance tol,
            const CommandOptions& options) {
  w.field("command", command);
  w.field("input_digest", digest(input));
  w.field("tolerance", tol.eps);
  w.field("seed", static_cast<std::size_t>(options.seed));
}

InputDocument require_kind(std::string_view input, DocumentKind kind, const char* name) {
  InputDocument doc = parse_document(input);
  if (doc.kind != kind) {
    throw std::invalid_argument(std::string("this command expects a document of kind '") + name + "'");
  }
  return doc;
}

Tro tro_from(const InputDocument& doc, Tolerance tol) {
  return closure_from_generators(doc.generators, doc.dim, tol);
}

// Runs a command body, turning input errors into exit code 2.
Report guarded(const std::function<Report()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    return Report{"", std::string("parse error: ") + e.what() + "\n", 2};
  } catch (const CapExceeded& e) {
    return Report{"", std::string("cap exceeded: ") + e.what() + "\n", 2};
  } catch (const std::exception& e) {
    return Report{"", std::string("input error: ") + e.what() + "\n", 2};
  }
}

Report finish(ReportWriter& w) {
  const bool ok = w.all_passed();
  return Report{w.finish(), "", ok ? 0 : 1};
}

void describe_tro(ReportWriter& w, const Tro& z) {
  w.field("ambient_dim", z.ambient_dim());
  w.field("space_dim", z.dim());
  w.field("square_dim", z.square().dim());
  w.field("j_dim", z.j_ideal().dim());
  w.field("center_dim", z.center().dim());
}

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i : v) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i);
  }
  return out;
}

}  // namespace

Report cmd_classify(std::string_view input, const CommandOptions& options) {
  return guarded([&] {
    const InputDocument doc = require_kind(input, DocumentKind::tro, "tro");
    const Tolerance tol = resolve_tolerance(doc, options);
    const Tro z = tro_from(doc, tol);
    const ClassificationReport r = classify(z, options.max_blocks);

    ReportWriter w;
    header(w, "classify", input, tol, options);
    describe_tro(w, z);
    w.field("block_count", r.block_count);
    w.field("natural_cone_count", r.natural_cone_count);
    w.field("maximal_cone_count", r.maximal_cone_count);
    w.field("unorderable", r.is_unorderable);
    w.field("decomposition_dims", std::to_string(r.decomposition_dims.first) + " " +
                                      std::to_string(r.decomposition_dims.second));
    w.field("maximal_indices", join_indices(r.is_maximally_ordered_candidates));
    bool splits_ok = true;
    for (const auto& s : r.splits) {
      w.field("split[" + std::to_string(s.tripotent_index) + "]",
              "algebra_dim=" + std::to_string(s.algebra_dim) +
                  " complement_dim=" + std::to_string(s.complement_dim) +
                  " reconstructs=" + (s.reconstructs ? "true" : "false") +
                  " star_algebra=" + (s.algebra_is_star_algebra ? "true" : "false"));
      splits_ok = splits_ok && s.reconstructs && s.algebra_is_star_algebra;
    }
    const bool unorderable_iff_trivial = r.is_unorderable == (r.natural_cone_count == 1);
    w.check("maximal_sets_agree", r.maximal_sets_agree);
    w.check("decompositions", splits_ok);
    w.check("unorderable_iff_single_cone", unorderable_iff_trivial);
    return finish(w);
  });
}

Report cmd_cones(std::string_view input, const CommandOptions& options) {
  return guarded([&] {
    const InputDocument doc = require_kind(input, DocumentKind::tro, "tro");
    const Tolerance tol = resolve_tolerance(doc, options);
    const Tro z = tro_from(doc, tol);
    const TripotentEnumeration e = enumerate_central_tripotents(z, options.max_blocks);
    const std::vector<std::size_t> maximal = leq_maximal_indices(e.tripotents, tol);

    ReportWriter w;
    header(w, "cones", input, tol, options);
    describe_tro(w, z);
    w.field("block_count", e.block_count);
    w.field("natural_cone_count", e.tripotents.size());
    bool all_certified = true;
    bool negation_closed = true;
    for (std::size_t i = 0; i < e.tripotents.size(); ++i) {
      const Tripotent& t = e.tripotents[i];
      const bool is_max = std::find(maximal.begin(), maximal.end(), i) != maximal.end();
      const std::string key = "tripotent[" + std::to_string(i) + "]";
      w.field(key, "maximal=" + std::string(is_max ? "true" : "false") +
                       " peirce_dim=" + std::to_string(peirce_space(t, z).dim()));
      w.field(key + ".matrix", format_matrix(t.u));
      all_certified = all_certified && is_selfadjoint_tripotent(t.u, tol) && t.is_central;
      const CMatrix neg = -t.u;
      negation_closed = negation_closed &&
                        std::any_of(e.tripotents.begin(), e.tripotents.end(),
                                    [&](const Tripotent& o) { return approx_equal(o.u, neg, tol); });
    }
    w.check("certified", all_certified);
    w.check("closed_under_negation", negation_closed);
    return finish(w);
  });
}

Report cmd_meet(std::string_view input, std::size_t index_u, std::size_t index_v,
                const CommandOptions& options) {
  return guarded([&] {
    const InputDocument doc = require_kind(input, DocumentKind::tro, "tro");
    const Tolerance tol = resolve_tolerance(doc, options);
    const Tro z = tro_from(doc, tol);
    const TripotentEnumeration e = enumerate_central_tripotents(z, options.max_blocks);
    const std::size_t n = e.tripotents.size();
    if (index_u >= n || index_v >= n) {
      throw std::out_of_range("tripotent index out of range; there are " + std::to_string(n) +
                              " (indices 0.." + std::to_string(n - 1) + ")");
    }
    const Tripotent& u = e.tripotents[index_u];
    const Tripotent& v = e.tripotents[index_v];
    const Tripotent m = meet(u, v, tol);
    const LowerBoundSearch glb = brute_force_glb(e.tripotents, u, v, tol);

    std::size_t meet_index = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (approx_equal(e.tripotents[i].u, m.u, tol)) meet_index = i;
    }

    ReportWriter w;
    header(w, "meet", input, tol, options);
    w.field("u_index", index_u);
    w.field("v_index", index_v);
    w.field("u", format_matrix(u.u));
    w.field("v", format_matrix(v.u));
    w.field("meet", format_matrix(m.u));
    w.field("meet_index", meet_index < n ? std::to_string(meet_index) : std::string("none"));
    w.field("lower_bound_count", glb.lower_bounds.size());
    w.check("meet_leq_u", leq(m, u, tol));
    w.check("meet_leq_v", leq(m, v, tol));
    w.check("meet_is_central_tripotent", meet_index < n);
    w.check("meet_is_greatest_lower_bound", glb.greatest == meet_index);
    return finish(w);
  });
}

Report cmd_commutative(std::string_view input, const CommandOptions& options) {
  return guarded([&] {
    const InputDocument doc = require_kind(input, DocumentKind::commutative, "commutative");
    const Tolerance tol = resolve_tolerance(doc, options);
    const FiniteInvolutiveSpace space =
        doc.topology == "discrete"     ? FiniteInvolutiveSpace::discrete(doc.tau)
        : doc.topology == "indiscrete" ? FiniteInvolutiveSpace::indiscrete(doc.tau)
                                       : FiniteInvolutiveSpace(doc.points, doc.opens, doc.tau);
    const SectionSpace w_space = build_w(space);
    const std::vector<PointSet> sets = antisymmetric_open_sets(space);

    ReportWriter w;
    header(w, "commutative", input, tol, options);
    w.field("points", space.size());
    w.field("open_count", space.opens().size());
    w.field("discrete", space.is_discrete());
    w.field("t0", space.is_t0());
    w.field("free_involution", space.is_free());
    w.field("w_dim", w_space.dim());
    w.field("antisymmetric_open_count", sets.size());

    std::size_t maximal_count = 0;
    bool consistent = true;
    bool roundtrip = true;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const MaximalityVerdict v = is_maximal_u(space, sets[i]);
      const ConeOfU cone = cone_of_u(w_space, sets[i]);
      roundtrip = roundtrip && recover_u_from_cone(w_space, cone) == sets[i];
      if (v.maximal()) ++maximal_count;
      consistent = consistent && v.consistent();
      auto b = [](bool x) { return x ? "true" : "false"; };
      w.field("antisymmetric[" + std::to_string(i) + "]",
              format_set(sets[i], space.size()) + " cone_dim=" + std::to_string(cone.span_dim()) +
                  " ii=" + b(v.boundary_is_complement) +
                  " iii=" + b(v.boundary_of_negative_is_complement) +
                  " iv=" + b(v.boundaries_agree_and_thin) +
                  " v=" + b(v.no_larger_antisymmetric_open) +
                  " consistent=" + b(v.consistent()));
    }
    w.field("maximal_count", maximal_count);
    std::size_t nontrivial = 0;
    for (PointSet s : sets) nontrivial += s != 0 ? 1 : 0;
    w.field("nontrivial_cone_count", nontrivial);

    // The equivalence of the conditions is stated for nonzero systems on
    // spaces without fixed points.
    if (space.is_free() && w_space.dim() > 0) {
      w.check("conditions_consistent", consistent);
    } else {
      w.field("conditions_consistent", "skipped (involution has fixed points or W is zero)");
    }
    w.check("roundtrip", roundtrip);
    w.check("cone_inclusion_matches_set_inclusion", cone_inclusion_matches_set_inclusion(space));

    const Tro embedded = embed_as_tro(w_space);
    w.field("embedded_space_dim", embedded.dim());
    if (space.is_discrete()) {
      const ClassificationReport r = classify(embedded, options.max_blocks);
      w.field("embedded_natural_cone_count", r.natural_cone_count);
      w.field("embedded_maximal_cone_count", r.maximal_cone_count);
      w.check("cross_validation", r.natural_cone_count == sets.size() &&
                                      r.maximal_cone_count == maximal_count);
    } else {
      w.field("cross_validation", "skipped (topology is not discrete)");
    }
    return finish(w);
  });
}

Report cmd_checkmap(std::string_view input, const CommandOptions& options) {
  return guarded([&] {
    const InputDocument doc = require_kind(input, DocumentKind::map, "map");
    const Tolerance tol = resolve_tolerance(doc, options);
    if (options.max_level == 0 || options.max_level > kMaxMatrixLevel) {
      throw std::invalid_argument("max-level must be in 1..4");
    }
    const std::size_t d = doc.dim;
    std::vector<CMatrix> gens = doc.generators;
    if (gens.empty()) {
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) gens.push_back(unit(d, i, j));
      }
    }
    const Tro domain = closure_from_generators(gens, d, tol);
    const Subspace& dom = domain.space();
    const LinearMap t = [&] {
      if (doc.map_matrix) return LinearMap(dom, doc.codomain_dim, *doc.map_matrix);
      if (doc.builtin == "identity") return identity_map(dom);
      if (doc.builtin == "transpose") return transpose_map(dom);
      if (doc.builtin == "negate") return scalar_map(dom, -1.0);
      if (doc.builtin == "trace") return trace_map(dom);
      return diagonal_expectation(dom);
    }();

    ReportWriter w;
    header(w, "checkmap", input, tol, options);
    w.field("domain_ambient_dim", d);
    w.field("domain_space_dim", dom.dim());
    w.field("codomain_dim", t.codomain_dim());
    const bool selfadjoint = is_selfadjoint_map(t, tol);
    const bool ternary = is_ternary_star_morphism(t, tol);

    Rng rng(options.seed);
    const CpVerdict cp = check_completely_positive(t, options.max_level, rng, 24, tol);
    w.field("cp_levels_checked", cp.levels_checked);
    if (cp.refuted) {
      w.field("cp_refuted_at_level", cp.level);
      w.field("cp_witness_dim", static_cast<std::size_t>(cp.witness->rows()));
      w.field("cp_witness", format_matrix(*cp.witness));
      w.field("cp_image", format_matrix(*cp.image));
      w.field("cp_image_min_eigenvalue", cp.min_eigenvalue);
    }
    w.check("selfadjoint_map", selfadjoint);
    w.check("ternary_star_morphism", ternary);
    w.check("completely_positive_up_to_" + std::to_string(options.max_level), !cp.refuted);
    if (ternary) {
      const InducedHom h = induced_hom(t, tol);
      w.field("induced_hom_domain_dim", h.pi.domain().dim());
      if (h.witness) w.field("induced_hom_witness", format_matrix(*h.witness));
      w.check("induced_hom_well_defined", h.well_defined);
      w.check("induced_hom_multiplicative", h.multiplicative);
      w.check("induced_hom_star", h.star_preserving);
    } else {
      w.field("induced_hom", "skipped (not a ternary *-morphism)");
    }
    return finish(w);
  });
}

}  // namespace otro

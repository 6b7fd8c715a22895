#include <random>

#include "doctest.h"
#include "mtg/corpus.hpp"
#include "mtg/error.hpp"
#include "mtg/galois.hpp"
#include "mtg/lemma_suite.hpp"
#include "oracles.hpp"

using namespace mtg;

namespace {

const GaloisContext& ctx(const char* name) {
  static std::map<std::string, GaloisContext> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, GaloisContext(load_corpus(name))).first;
  return it->second;
}

ElementSet names(const GaloisContext& c, std::initializer_list<const char*> list) {
  ElementSet s;
  for (const char* n : list) s.insert(c.structure().element(n));
  return s;
}

const char* kGf4In16[] = {"0", "1", "w5", "w10"};

ElementSet gf2(const GaloisContext& c) { return names(c, {"0", "1"}); }
ElementSet gf4(const GaloisContext& c) { return names(c, {kGf4In16[0], kGf4In16[1], kGf4In16[2], kGf4In16[3]}); }

}  // namespace

TEST_CASE("definable closure") {
  const auto& ex = ctx("EX_RS");
  CHECK(ex.dcl({}) == ElementSet{});
  CHECK(ex.dcl(names(ex, {"a"})) == names(ex, {"a", "b", "c", "d"}));
  const auto& f4 = ctx("GF4");
  CHECK(f4.dcl({}) == names(f4, {"0", "1"}));
  CHECK(ctx("RIGID3").dcl({}) == ctx("RIGID3").structure().universe());
}

TEST_CASE("definable closure matches the brute-force oracle") {
  for (const char* name : {"EX_RS", "C5", "RIGID3", "GF4"}) {
    const auto& c = ctx(name);
    const auto& m = c.structure();
    const auto brute = oracle::brute_force_automorphisms(m);
    for (std::uint32_t mask = 0; mask < (1u << m.size()); ++mask) {
      ElementSet a;
      for (ElementId x = 0; x < m.size(); ++x) {
        if (mask >> x & 1u) a.insert(x);
      }
      CHECK(c.dcl(a) == oracle::dcl(brute, a, m.size()));
    }
  }
}

TEST_CASE("algebraic closure is everything in a finite structure") {
  CHECK(ctx("EX_RS").acl({}) == ctx("EX_RS").structure().universe());
  CHECK(ctx("RIGID3").acl({}) == ctx("RIGID3").structure().universe());
  CHECK(ctx("GF16").acl(gf2(ctx("GF16"))) == ctx("GF16").structure().universe());
}

TEST_CASE("orbits and degrees") {
  const auto& ex = ctx("EX_RS");
  const auto o = ex.orbit_over({0}, {});
  CHECK(o.orbit == TupleSet{{0}, {1}, {2}, {3}});
  CHECK(o.degree == 4);
  const auto& f16 = ctx("GF16");
  const ElementId w = f16.structure().element("w");
  CHECK(f16.orbit_over({w}, gf2(f16)).degree == 4);
  CHECK(ex.orbit_over({2}, ElementSet{2}).degree == 1);
  const auto brute = oracle::brute_force_automorphisms(ex.structure());
  for (ElementId x = 0; x < 6; ++x) {
    for (ElementId y = 0; y < 6; ++y) {
      CHECK(ex.orbit_over({x, y}, ElementSet{5}).orbit ==
            oracle::orbit(oracle::fixing(brute, ElementSet{5}), {x, y}));
    }
  }
}

TEST_CASE("irreducible formulas") {
  const auto& ex = ctx("EX_RS");
  const auto& sig = ex.structure().signature();
  CHECK(ex.is_irreducible_formula(parse_formula("E z. R(y,z)", sig), {0}, {}));
  CHECK_FALSE(ex.is_irreducible_formula(parse_formula("y = y", sig), {0}, {}));
  CHECK(ex.is_irreducible_formula(parse_formula("y = c", sig), {2}, ElementSet{2}));
  CHECK_THROWS_AS(ex.is_irreducible_formula(parse_formula("y = c", sig), {2}, {}), InputError);
  CHECK(ex.is_irreducible_formula(parse_formula("R(x,y)", sig), {"x", "y"}, {0, 1}, {}));
}

TEST_CASE("generators and degrees of extensions") {
  const auto& ex = ctx("EX_RS");
  CHECK(ex.find_generator({}, names(ex, {"a", "b", "c", "d"})) == Tuple{0});
  CHECK(ex.find_generator(ElementSet{4}, ElementSet{4}) == Tuple{});
  const auto& f16 = ctx("GF16");
  const auto all = f16.structure().universe();
  const auto gen = f16.find_generator(gf2(f16), all);
  REQUIRE(gen.has_value());
  CHECK(f16.dcl(gf2(f16).united(entries_of(*gen))) == all);
  CHECK(f16.degree_of_extension(gf2(f16), all) == 4);
  CHECK(f16.degree_of_extension(gf2(f16), gf4(f16)) == 2);
  CHECK(f16.degree_of_extension(gf4(f16), gf4(f16)) == 1);
}

TEST_CASE("normal and splitting extensions") {
  const auto& ex = ctx("EX_RS");
  const auto abcd = names(ex, {"a", "b", "c", "d"});
  CHECK(ex.is_normal_extension({}, abcd));
  CHECK_FALSE(ex.is_normal_extension({}, names(ex, {"a", "b"})));
  CHECK(ex.is_normal_extension({}, ex.acl({})));
  const auto split = ex.is_splitting_extension({}, abcd);
  CHECK(split.splitting);
  CHECK(split.witness == Tuple{0});
  const auto no = ex.is_splitting_extension({}, names(ex, {"a", "b"}));
  CHECK_FALSE(no.splitting);
  CHECK_FALSE(no.witness.has_value());
  const auto& f16 = ctx("GF16");
  const auto s16 = f16.is_splitting_extension(gf2(f16), f16.structure().universe());
  CHECK(s16.splitting);
  REQUIRE(s16.witness.has_value());
  CHECK(f16.orbit_over(*s16.witness, gf2(f16)).degree == 4);
}

TEST_CASE("relative and extension automorphisms") {
  const auto& ex = ctx("EX_RS");
  CHECK(ex.relative_aut(names(ex, {"a", "b", "c", "d"}), {}).order() == 4);
  const auto& f16 = ctx("GF16");
  CHECK(f16.relative_aut(f16.structure().universe(), gf2(f16)).order() == 4);
  CHECK(f16.relative_aut(gf2(f16), gf2(f16)).is_trivial());
  // Aut(B/A) for a non-invariant B counts B n O(b/A).
  const auto ab = names(ex, {"a", "b"});
  CHECK(ex.extension_aut(ab, {}).order() == 2);
}

TEST_CASE("Fix in both directions") {
  const auto& ex = ctx("EX_RS");
  const auto abcd = names(ex, {"a", "b", "c", "d"});
  CHECK(ex.fix_of_subgroup(abcd, PermGroup::trivial(4)) == abcd);
  CHECK(ex.fix_of_subgroup(abcd, ex.relative_aut(abcd, {})).empty());
  const auto& f16 = ctx("GF16");
  const auto all = f16.structure().universe();
  const PermGroup g = f16.relative_aut(all, gf2(f16));
  PermGroup frob2;
  for (const auto& h : all_subgroups(g)) {
    if (h.order() == 2) frob2 = h;
  }
  CHECK(f16.fix_of_subgroup(all, frob2) == gf4(f16));
  CHECK(f16.fix_of_set(all, gf2(f16), gf2(f16)) == g);
  CHECK(f16.fix_of_set(all, gf2(f16), all).is_trivial());
  CHECK(f16.fix_of_set(all, gf2(f16), gf4(f16)) == frob2);
}

TEST_CASE("codes of finite sets") {
  const auto& ex = ctx("EX_RS");
  const auto none = ex.find_code({{0}, {1}});
  CHECK_FALSE(none.code.has_value());
  CHECK(none.certified_absent);
  CHECK(none.setwise.order() == 4);
  CHECK(ctx("RIGID3").find_code({{0}, {2}}).code == Tuple{});
  const auto& f4 = ctx("GF4");
  CHECK(f4.find_code({{f4.structure().element("w")}, {f4.structure().element("w2")}}).code == Tuple{});
}

TEST_CASE("coding reports") {
  const auto r = ctx("EX_RS").codes_finite_sets(3);
  CHECK_FALSE(r.codes());
  REQUIRE_FALSE(r.uncoded.empty());
  CHECK(r.uncoded.front().set == TupleSet{{0}, {1}});
  CHECK(ctx("RIGID3").codes_finite_sets(3).codes());
  CHECK(ctx("GF16").codes_finite_sets(2).codes());
  CHECK(ctx("C5").codes_finite_sets(3).codes());
}

TEST_CASE("multi-symmetric codes") {
  const auto& f4 = ctx("GF4");
  const auto& m = f4.structure();
  const ElementId one = m.element("1");
  CHECK(f4.multisymmetric_code({{m.element("w")}, {m.element("w2")}}) == Tuple{one, one});
  for (ElementId x = 0; x < m.size(); ++x) CHECK(f4.multisymmetric_code({{x}}) == Tuple{x});
}

TEST_CASE("multi-symmetric pair pattern") {
  const auto& f16 = ctx("GF16");
  const auto& m = f16.structure();
  const FieldTables field(m);
  auto v = [&](ElementId x) { return oracle::gf_value(m.element_name(x), 4, 0b10011); };
  auto mul = [](std::uint32_t x, std::uint32_t y) { return oracle::gf_mul(x, y, 4, 0b10011); };
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    Tuple p{static_cast<ElementId>(rng() % 16), static_cast<ElementId>(rng() % 16)};
    Tuple q{static_cast<ElementId>(rng() % 16), static_cast<ElementId>(rng() % 16)};
    if (p == q) continue;
    const Tuple code = multisymmetric_coefficients(field, {p, q});
    REQUIRE(code.size() == 5);
    const auto [a, b] = std::pair{v(p[0]), v(p[1])};
    const auto [c, d] = std::pair{v(q[0]), v(q[1])};
    // Monomials T U1, T U2, U1^2, U1 U2, U2^2.
    CHECK(v(code[0]) == (a ^ c));
    CHECK(v(code[1]) == (b ^ d));
    CHECK(v(code[2]) == mul(a, c));
    CHECK(v(code[3]) == (mul(a, d) ^ mul(b, c)));
    CHECK(v(code[4]) == mul(b, d));
    CHECK(f16.multisymmetric_code({p, q}) == code);
  }
}

TEST_CASE("field tables reject non-fields") {
  CHECK_THROWS_AS(FieldTables(load_corpus("EX_RS")), InputError);
}

TEST_CASE("Galois correspondence on GF16") {
  const auto& f16 = ctx("GF16");
  const auto r = f16.verify_galois_correspondence(gf2(f16), f16.structure().universe());
  CHECK(r.passed());
  CHECK(r.subgroups.size() == 3);
  CHECK(r.intermediates.size() == 3);
  CHECK(r.pairs.size() == 3);
  CHECK(r.intermediates[0].set == gf2(f16));
  CHECK(r.intermediates[1].set == gf4(f16));
  CHECK(r.coding_verdict == std::optional<bool>(true));
}

TEST_CASE("Galois correspondence fails on EX_RS") {
  const auto& ex = ctx("EX_RS");
  const auto r = ex.verify_galois_correspondence({}, names(ex, {"a", "b", "c", "d"}));
  CHECK_FALSE(r.passed());
  CHECK(r.group.order() == 4);
  CHECK(r.subgroups.size() == 5);
  CHECK(r.intermediates.size() == 2);
  REQUIRE(r.failures.size() == 3);
  for (const auto& f : r.failures) {
    CHECK(f.kind == FailureKind::Subgroup);
    CHECK(r.subgroups[f.index].group.order() == 2);
    CHECK(r.subgroups[f.index].fixed.empty());
    CHECK(r.subgroups[f.index].closure_order == 4);
  }
  CHECK(r.coding_verdict == std::optional<bool>(false));
}

TEST_CASE("Galois correspondence on small structures") {
  for (const char* name : {"C5", "RIGID3"}) {
    const auto& c = ctx(name);
    const auto r = c.verify_galois_correspondence({}, c.structure().universe());
    CHECK(r.passed());
    CHECK(r.pairs.size() == r.subgroups.size());
  }
  const auto& ex = ctx("EX_RS");
  const auto abcd = names(ex, {"a", "b", "c", "d"});
  const auto same = ex.verify_galois_correspondence(abcd, abcd);
  CHECK(same.passed());
  CHECK(same.subgroups.size() == 1);
  CHECK(same.intermediates.size() == 1);
  const auto rigid = ctx("RIGID3").verify_galois_correspondence({}, ctx("RIGID3").structure().universe());
  CHECK(rigid.base == ctx("RIGID3").structure().universe());
  CHECK_FALSE(rigid.notes.empty());
  CHECK_THROWS_AS(ex.verify_galois_correspondence({}, names(ex, {"a", "b"})), HypothesisError);
}

TEST_CASE("towers") {
  const auto& f16 = ctx("GF16");
  const auto r = f16.verify_tower(gf2(f16), gf4(f16), f16.structure().universe());
  CHECK(r.passed());
  CHECK(r.deg_middle_base == 2);
  CHECK(r.deg_top_middle == 2);
  CHECK(r.deg_top_base == 4);
  CHECK(r.aut_top_base == 4);
  CHECK(r.middle_normal);
  CHECK(r.top_normal);
  CHECK(r.top_normal_middle);
  CHECK(r.exact == std::optional<bool>(true));
  CHECK(r.subgroup_normal == std::optional<bool>(true));

  const auto& ex = ctx("EX_RS");
  const auto abcd = names(ex, {"a", "b", "c", "d"});
  const auto d = ex.verify_tower({}, abcd, abcd);
  CHECK(d.passed());
  CHECK(d.deg_top_base == 4);
  CHECK(d.deg_top_middle == 1);
  CHECK(d.deg_middle_base == 4);

  const auto t = ex.verify_tower(abcd, abcd, abcd);
  CHECK(t.passed());
  CHECK(t.deg_top_base == 1);
  CHECK(t.aut_top_base == 1);
  CHECK_THROWS_AS(ex.verify_tower(abcd, {}, abcd), InputError);
}

TEST_CASE("property suite passes on every corpus structure") {
  for (const auto& e : corpus()) {
    const GaloisContext c(load_structure(e.source));
    PropertyOptions opts;
    opts.instances = 60;
    opts.seed = 17;
    const auto r = run_property_suite(c, opts);
    CHECK_MESSAGE(r.passed(), e.name);
    for (const auto& t : r.tallies) {
      CHECK_MESSAGE(t.violations == 0, t.name);
      CHECK(t.checked + t.skipped == opts.instances);
    }
    CHECK(r.duality_expected == (e.name != "EX_RS"));
  }
}

// One line per acceptance criterion: PASS/FAIL, detail, elapsed vs limit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "mtg/autgroup.hpp"
#include "mtg/corpus.hpp"
#include "mtg/formula.hpp"
#include "mtg/galois.hpp"
#include "mtg/lemma_suite.hpp"
#include "oracles.hpp"

using namespace mtg;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "[violated: " << what << "] ";
    }
  }
};

int failures = 0;

void criterion(const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << "[exception: " << e.what() << "] ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("%s  %-28s %s(%.3f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", name,
              o.detail.str().c_str(), secs, limit_s, in_time ? "" : ", TIMEOUT");
  std::fflush(stdout);
}

ElementSet named(const Structure& m, std::initializer_list<const char*> list) {
  ElementSet s;
  for (const char* n : list) s.insert(m.element(n));
  return s;
}

}  // namespace

int main() {
  criterion("ex_rs_reproduction", 1, [](Outcome& o) {
    const GaloisContext ctx(load_corpus("EX_RS"));
    const auto c = named(ctx.structure(), {"a", "b", "c", "d"});
    const auto order = ctx.relative_aut(c, {}).order();
    o.detail << "|Aut(C/{})| = " << order << " ";
    o.expect(order == 4, "order 4");
  });

  criterion("ex_rs_duality_failure", 5, [](Outcome& o) {
    const GaloisContext ctx(load_corpus("EX_RS"));
    const auto c = named(ctx.structure(), {"a", "b", "c", "d"});
    const auto r = ctx.verify_galois_correspondence({}, c);
    o.detail << r.subgroups.size() << " subgroups, " << r.intermediates.size()
             << " intermediates, " << r.failures.size() << " failures ";
    o.expect(r.subgroups.size() == 5, "5 subgroups");
    o.expect(r.intermediates.size() == 2, "2 intermediates");
    o.expect(r.intermediates.size() == 2 && r.intermediates[0].set.empty() &&
                 r.intermediates[1].set == c,
             "intermediates are {} and C");
    std::set<std::size_t> order_two, failed;
    for (std::size_t i = 0; i < r.subgroups.size(); ++i) {
      if (r.subgroups[i].group.order() == 2) order_two.insert(i);
    }
    for (const auto& f : r.failures) {
      if (f.kind == FailureKind::Subgroup) failed.insert(f.index);
      o.expect(f.kind == FailureKind::Subgroup, "only subgroup failures");
    }
    o.expect(order_two.size() == 3 && failed == order_two, "failures are the order-2 subgroups");
    for (std::size_t i : order_two) {
      o.expect(r.subgroups[i].closure_order != 2 && !r.subgroups[i].closed,
               "Fix(Fix(H)) != H for order-2 H");
    }
    o.expect(!r.passed(), "verdict fail");
  });

  criterion("ex_rs_coding_failure", 5, [](Outcome& o) {
    GaloisOptions opts;
    opts.max_len = 3;
    const GaloisContext ctx(load_corpus("EX_RS"), opts);
    const auto& m = ctx.structure();
    const auto r = ctx.find_code({{m.element("a")}, {m.element("b")}});
    o.detail << "code " << (r.code ? format_tuple(m, *r.code) : std::string("none")) << " ";
    o.expect(!r.code.has_value(), "no code up to length 3");
    // Independent check: no tuple of length <= 3 has stabilizer equal to the setwise one.
    const auto brute = oracle::brute_force_automorphisms(m);
    std::set<oracle::Images> setwise;
    for (const auto& g : brute) {
      if (TupleSet{{g[0]}, {g[1]}} == TupleSet{{0}, {1}}) setwise.insert(g);
    }
    bool any = false;
    for_each_combination(m.universe().members(), 3, [&](const Tuple& t) {
      // Pointwise stabilizers depend only on the entries, so sorted tuples suffice.
      std::set<oracle::Images> stab;
      for (const auto& g : oracle::fixing(brute, entries_of(t))) stab.insert(g);
      any = any || stab == setwise;
      return any;
    });
    o.expect(!any, "brute force finds no code");
  });

  criterion("galois_positive_cases", 30, [](Outcome& o) {
    const GaloisContext f16(load_corpus("GF16"));
    const auto r = f16.verify_galois_correspondence(named(f16.structure(), {"0", "1"}),
                                                    f16.structure().universe());
    o.detail << "GF16/GF2 " << r.pairs.size() << " pairs; ";
    o.expect(r.passed(), "GF16 passes");
    o.expect(r.pairs.size() == 3, "3 pairs");
    for (const char* name : {"RIGID3", "C5"}) {
      const GaloisContext c(load_corpus(name));
      const auto s = c.verify_galois_correspondence({}, c.structure().universe());
      o.detail << name << " " << (s.passed() ? "pass" : "fail") << "; ";
      o.expect(s.passed(), std::string(name) + " passes");
    }
  });

  criterion("tower_law", 30, [](Outcome& o) {
    const GaloisContext ctx(load_corpus("GF16"));
    const auto& m = ctx.structure();
    const auto r = ctx.verify_tower(named(m, {"0", "1"}), named(m, {"0", "1", "w5", "w10"}), m.universe());
    o.detail << "degrees " << r.deg_middle_base << "," << r.deg_top_middle << "," << r.deg_top_base
             << "; orders " << r.aut_top_base << " = " << r.aut_top_middle << "*" << r.aut_middle_base
             << " ";
    o.expect(r.deg_middle_base == 2 && r.deg_top_middle == 2 && r.deg_top_base == 4, "degrees 2,2,4");
    o.expect(r.deg_top_base == r.deg_top_middle * r.deg_middle_base, "4 = 2*2");
    o.expect(r.aut_top_base == 4 && r.aut_top_middle == 2 && r.aut_middle_base == 2, "orders 4,2,2");
    o.expect(r.exact == std::optional<bool>(true), "exact sequence");
    o.expect(r.middle_normal && r.top_normal && r.top_normal_middle, "all normal");
    o.expect(r.subgroup_normal == std::optional<bool>(true), "Aut(C/B) normal");
    o.expect(r.passed(), "all checks pass");
    // Frobenius cross-check of the group orders.
    const auto frob = oracle::frobenius_group(m, 4, 0b10011);
    o.expect(frob.size() == r.aut_top_base, "Frobenius group order");
  });

  criterion("lemma_suite", 120, [](Outcome& o) {
    std::size_t checked = 0, violations = 0, skipped = 0;
    for (const auto& e : corpus()) {
      const GaloisContext ctx(load_structure(e.source));
      PropertyOptions opts;
      opts.instances = 200;
      opts.seed = 1;
      const auto r = run_property_suite(ctx, opts);
      for (const auto& t : r.tallies) {
        checked += t.checked;
        violations += t.violations;
        skipped += t.skipped;
        o.expect(t.violations == 0, e.name + "/" + t.name);
        o.expect(t.checked + t.skipped == 200, e.name + "/" + t.name + " ran 200");
      }
      o.expect(!r.duality_expected || (r.duality && r.duality->passed()), e.name + " duality");
      o.expect(r.passed(), e.name + " suite");
    }
    o.detail << checked << " checks, " << violations << " violations, " << skipped << " inconclusive ";
  });

  criterion("multisymmetric_codes", 60, [](Outcome& o) {
    std::size_t sets = 0, violations = 0;
    for (auto [name, bits, modulus] : {std::tuple{"GF4", 2u, 0b111u}, std::tuple{"GF16", 4u, 0b10011u}}) {
      const GaloisContext ctx(load_corpus(name));
      const auto& m = ctx.structure();
      const auto& aut = ctx.automorphisms();
      const FieldTables field(m);
      auto coded = [&](const TupleSet& f, const Tuple& code) {
        return setwise_stabilizer(aut, f) == stabilizer_pointwise(aut, code);
      };
      for (ElementId x = 0; x < m.size(); ++x) {
        for (ElementId y = x; y < m.size(); ++y) {
          const TupleSet f = x == y ? TupleSet{{x}} : TupleSet{{x}, {y}};
          ++sets;
          if (!coded(f, ctx.multisymmetric_code(f))) ++violations;
        }
      }
      std::mt19937_64 rng(2024);
      auto v = [&](ElementId x) { return oracle::gf_value(m.element_name(x), bits, modulus); };
      auto mul = [&](std::uint32_t x, std::uint32_t y) { return oracle::gf_mul(x, y, bits, modulus); };
      for (int i = 0; i < 10;) {
        const Tuple p{static_cast<ElementId>(rng() % m.size()), static_cast<ElementId>(rng() % m.size())};
        const Tuple q{static_cast<ElementId>(rng() % m.size()), static_cast<ElementId>(rng() % m.size())};
        if (p == q) continue;
        ++i;
        ++sets;
        const TupleSet f{p, q};
        const Tuple code = ctx.multisymmetric_code(f);
        if (!coded(f, code)) ++violations;
        const auto a = v(p[0]), b = v(p[1]), c = v(q[0]), d = v(q[1]);
        // (a+c, ac, b+d, bd, ad+bc) by monomial: T U1, T U2, U1^2, U1 U2, U2^2.
        const bool pattern = code.size() == 5 && v(code[0]) == (a ^ c) && v(code[1]) == (b ^ d) &&
                             v(code[2]) == mul(a, c) && v(code[3]) == (mul(a, d) ^ mul(b, c)) &&
                             v(code[4]) == mul(b, d);
        if (!pattern) ++violations;
      }
    }
    o.detail << sets << " sets, " << violations << " violations ";
    o.expect(violations == 0, "zero violations");
  });

  criterion("engine_oracles", 120, [](Outcome& o) {
    std::size_t mismatches = 0, structures = 0, groups = 0, formulas = 0;
    for (const auto& e : corpus()) {
      const Structure m = load_structure(e.source);
      if (m.size() > 6) continue;
      ++structures;
      const auto brute = oracle::brute_force_automorphisms(m);
      std::set<oracle::Images> got;
      for (const auto& p : automorphism_group(m).elements()) got.insert(p.images());
      if (got != std::set<oracle::Images>(brute.begin(), brute.end())) ++mismatches;
    }
    std::mt19937_64 rng(99);
    for (; groups < 200; ++groups) {
      const std::size_t n = 2 + rng() % 7;
      std::vector<Permutation> gens;
      std::vector<oracle::Images> raw;
      for (std::size_t k = 0; k < 1 + rng() % 3; ++k) {
        std::vector<ElementId> img(n);
        for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<ElementId>(i);
        std::shuffle(img.begin(), img.end(), rng);
        gens.emplace_back(img);
        raw.push_back(img);
      }
      if (close_group(n, gens).order() != oracle::naive_closure(n, raw).size()) ++mismatches;
    }
    const std::vector<const char*> names{"EX_RS", "C5", "RIGID3", "GF4"};
    for (; formulas < 500; ++formulas) {
      const Structure m = load_corpus(names[formulas % names.size()]);
      const Formula f = parse_formula(oracle::random_formula(rng, m, {"x", "y"}, 4), m.signature());
      for (ElementId x = 0; x < m.size(); ++x) {
        for (ElementId y = 0; y < m.size(); ++y) {
          if (evaluate(m, f, {{"x", x}, {"y", y}}) != oracle::naive_eval(m, f, {{"x", x}, {"y", y}})) {
            ++mismatches;
          }
        }
      }
    }
    o.detail << structures << " structures, " << groups << " groups, " << formulas << " formulas, "
             << mismatches << " mismatches ";
    o.expect(mismatches == 0, "zero mismatches");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

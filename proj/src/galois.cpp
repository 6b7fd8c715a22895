#include "mtg/galois.hpp"

#include <algorithm>
#include <map>

#include "mtg/error.hpp"

namespace mtg {

namespace {

Tuple positions_in(const ElementSet& c, const ElementSet& b) {
  Tuple out;
  for (ElementId x : b) {
    auto pos = c.position(x);
    if (!pos) throw InputError("set is not contained in C");
    out.push_back(static_cast<ElementId>(*pos));
  }
  return out;
}

ElementSet fixed_members(const ElementSet& c, const PermGroup& h) {
  ElementSet out;
  for (ElementId pos : fixed_points(h)) out.insert(c.members()[pos]);
  return out;
}

TupleSet singletons(const ElementSet& s) {
  TupleSet out;
  for (ElementId x : s) out.insert(Tuple{x});
  return out;
}

std::string describe_set(const Structure& m, const ElementSet& s) { return format_set(m, s); }

std::vector<std::uint64_t> closed_masks_impl(const std::vector<std::uint64_t>& fixed_masks,
                                             std::uint64_t free_mask, bool parallel) {
  std::vector<ElementId> free_bits;
  for (ElementId b = 0; b < 64; ++b) {
    if ((free_mask >> b) & 1u) free_bits.push_back(b);
  }
  const auto subsets = static_cast<std::int64_t>(std::uint64_t{1} << free_bits.size());

  // Closure of S = points fixed by every element that fixes S.
  auto closure = [&](std::uint64_t local) {
    std::uint64_t s = 0;
    for (std::size_t k = 0; k < free_bits.size(); ++k) {
      if ((local >> k) & 1u) s |= std::uint64_t{1} << free_bits[k];
    }
    std::uint64_t acc = ~std::uint64_t{0};
    for (auto f : fixed_masks) {
      if ((s & f) == s) acc &= f;
    }
    return acc;
  };

  std::vector<std::uint64_t> out;
  if (parallel) {
#pragma omp parallel
    {
      std::vector<std::uint64_t> mine;
#pragma omp for schedule(static) nowait
      for (std::int64_t local = 0; local < subsets; ++local) {
        mine.push_back(closure(static_cast<std::uint64_t>(local)));
      }
      std::sort(mine.begin(), mine.end());
      mine.erase(std::unique(mine.begin(), mine.end()), mine.end());
#pragma omp critical
      out.insert(out.end(), mine.begin(), mine.end());
    }
  } else {
    for (std::int64_t local = 0; local < subsets; ++local) {
      out.push_back(closure(static_cast<std::uint64_t>(local)));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<std::uint64_t> closed_intermediate_masks(const std::vector<std::uint64_t>& fixed_masks,
                                                     std::uint64_t free_mask) {
  return closed_masks_impl(fixed_masks, free_mask, true);
}

std::vector<std::uint64_t> closed_intermediate_masks_serial(
    const std::vector<std::uint64_t>& fixed_masks, std::uint64_t free_mask) {
  return closed_masks_impl(fixed_masks, free_mask, false);
}

// ---------------------------------------------------------------------------
// Field arithmetic and multi-symmetric coefficients

FieldTables::FieldTables(const Structure& m) : n_(m.size()) {
  const auto& sig = m.signature();
  auto fetch = [&](const char* name, std::vector<ElementId>& table) {
    auto r = sig.find(name);
    if (!r || sig[*r].arity != 3) {
      throw InputError(std::string("not a field encoding: missing ") + name + "/3");
    }
    const auto unset = static_cast<ElementId>(n_);
    table.assign(n_ * n_, unset);
    for (const auto& t : m.table(*r)) {
      auto& cell = table[t[0] * n_ + t[1]];
      if (cell != unset && cell != t[2]) {
        throw InputError(std::string("not a field encoding: ") + name + " is not functional");
      }
      cell = t[2];
    }
    if (std::find(table.begin(), table.end(), unset) != table.end()) {
      throw InputError(std::string("not a field encoding: ") + name + " is not total");
    }
  };
  fetch("add", add_);
  fetch("mul", mul_);

  auto is_identity = [&](const std::vector<ElementId>& table, ElementId e) {
    for (ElementId y = 0; y < n_; ++y) {
      if (table[e * n_ + y] != y || table[y * n_ + e] != y) return false;
    }
    return true;
  };
  bool found_zero = false, found_one = false;
  for (ElementId x = 0; x < n_ && !found_zero; ++x) {
    if (is_identity(add_, x)) zero_ = x, found_zero = true;
  }
  for (ElementId x = 0; x < n_ && !found_one; ++x) {
    if (x != zero_ && is_identity(mul_, x)) one_ = x, found_one = true;
  }
  if (!found_zero || !found_one) throw InputError("not a field encoding: missing identities");
}

Tuple multisymmetric_coefficients(const FieldTables& field, const TupleSet& f) {
  if (f.empty()) return {};
  const std::size_t width = f.begin()->size();
  for (const auto& t : f) {
    if (t.size() != width) throw InputError("set mixes tuples of different lengths");
  }
  // exponent vector (T, U_1..U_n) -> coefficient
  std::map<std::vector<unsigned>, ElementId> poly{{std::vector<unsigned>(width + 1, 0), field.one()}};
  for (const auto& t : f) {
    std::map<std::vector<unsigned>, ElementId> next;
    for (const auto& [exp, coef] : poly) {
      for (std::size_t v = 0; v <= width; ++v) {
        auto e = exp;
        ++e[v];
        const ElementId factor = v == 0 ? field.one() : t[v - 1];
        auto [it, inserted] = next.emplace(std::move(e), field.zero());
        it->second = field.add(it->second, field.mul(coef, factor));
      }
    }
    poly = std::move(next);
  }
  Tuple out;
  auto it = poly.rbegin();
  ++it;  // T^m
  for (; it != poly.rend(); ++it) out.push_back(it->second);
  return out;
}

// ---------------------------------------------------------------------------
// GaloisContext

GaloisContext::GaloisContext(Structure m, GaloisOptions options)
    : m_(std::move(m)), options_(options), aut_(automorphism_group(m_, options_.aut)) {}

void GaloisContext::check_nested(const ElementSet& inner, const ElementSet& outer,
                                 const char* what) const {
  m_.check_elements(inner);
  m_.check_elements(outer);
  if (!inner.is_subset_of(outer)) throw InputError(std::string("nesting violated: ") + what);
}

PermGroup GaloisContext::fixing(const ElementSet& a) const {
  m_.check_elements(a);
  return stabilizer_pointwise(aut_, a.as_tuple());
}

ElementSet GaloisContext::dcl(const ElementSet& a) const { return fixed_points(fixing(a)); }

ElementSet GaloisContext::acl(const ElementSet& a) const {
  const PermGroup g = fixing(a);
  ElementSet out;
  for (ElementId x = 0; x < m_.size(); ++x) {
    // every orbit of a finite group is finite; the test is kept explicit
    const auto o = orbit(g, Tuple{x});
    if (o.size() <= g.order()) out.insert(x);
  }
  return out;
}

OrbitDescriptor GaloisContext::orbit_over(const Tuple& b, const ElementSet& a) const {
  m_.check_elements(b);
  OrbitDescriptor d;
  d.base = b;
  d.params = a;
  d.orbit = orbit(fixing(a), b);
  d.degree = d.orbit.size();
  return d;
}

bool GaloisContext::is_irreducible_formula(const Formula& f, const Tuple& b,
                                           const ElementSet& a) const {
  return is_irreducible_formula(f, free_variables(f, m_), b, a);
}

bool GaloisContext::is_irreducible_formula(const Formula& f, const std::vector<std::string>& vars,
                                           const Tuple& b, const ElementSet& a) const {
  m_.check_elements(a);
  m_.check_elements(b);
  ElementSet params;
  for (const auto& id : free_identifiers(f)) {
    if (std::find(vars.begin(), vars.end(), id) != vars.end()) continue;
    if (auto x = m_.find_element(id)) params.insert(*x);
  }
  if (!params.is_subset_of(a)) {
    throw InputError("formula uses parameters " + format_set(m_, params.minus(a)) +
                     " outside A");
  }
  if (vars.size() != b.size()) {
    throw InputError("formula has " + std::to_string(vars.size()) +
                     " free variables but the tuple has length " + std::to_string(b.size()));
  }
  const TupleSet solutions = solution_set(m_, f, vars);
  return solutions.count(b) != 0 && solutions == orbit_over(b, a).orbit;
}

std::optional<Tuple> GaloisContext::find_generator(const ElementSet& a,
                                                   const ElementSet& b) const {
  check_nested(a, b, "A must be a subset of B");
  std::optional<Tuple> found;
  for_each_combination(b.members(), options_.max_len, [&](const Tuple& t) {
    if (b.is_subset_of(dcl(a.united(ElementSet(t))))) {
      found = t;
      return true;
    }
    return false;
  });
  return found;
}

std::size_t GaloisContext::degree_of_extension(const ElementSet& a, const ElementSet& b) const {
  auto gen = find_generator(a, b);
  if (!gen) {
    throw Inconclusive("no generator of " + format_set(m_, b) + " over " + format_set(m_, a) +
                       " within length " + std::to_string(options_.max_len));
  }
  return orbit_over(*gen, a).degree;
}

bool GaloisContext::is_normal_extension(const ElementSet& a, const ElementSet& b) const {
  check_nested(a, b, "A must be a subset of B");
  const PermGroup g = fixing(a);
  for (ElementId x : b) {
    for (const auto& t : orbit(g, Tuple{x})) {
      if (!b.contains(t[0])) return false;
    }
  }
  return true;
}

SplittingResult GaloisContext::is_splitting_extension(const ElementSet& a,
                                                      const ElementSet& b) const {
  check_nested(a, b, "A must be a subset of B");
  const PermGroup g = fixing(a);
  SplittingResult result;
  for (std::size_t len = 1; len <= options_.max_len && !result.splitting; ++len) {
    for_each_combination(b.members(), len, [&](const Tuple& t) {
      if (t.size() != len) return false;
      const ElementSet spread = entries_of(orbit(g, t));
      if (spread.is_subset_of(b) && b.is_subset_of(dcl(a.united(spread)))) {
        result = {true, t};
        return true;
      }
      return false;
    });
  }
  return result;
}

PermGroup GaloisContext::relative_aut(const ElementSet& c, const ElementSet& a) const {
  check_nested(a, c, "A must be a subset of C");
  return mtg::relative_aut(fixing(a), c);
}

PermGroup GaloisContext::extension_aut(const ElementSet& b, const ElementSet& a) const {
  check_nested(a, b, "A must be a subset of B");
  const PermGroup stab = setwise_stabilizer(fixing(a), singletons(b), options_.element_cap);
  return restrict_to_invariant_set(stab, b).image;
}

ElementSet GaloisContext::fix_of_subgroup(const ElementSet& c, const PermGroup& h) const {
  m_.check_elements(c);
  if (h.degree() != c.size()) throw InputError("subgroup does not act on C");
  ElementSet fixed = fixed_members(c, h);
  if (dcl(fixed).intersected(c) != fixed) {
    throw HypothesisError("fixed set of H is not definably closed; H is not a group of "
                          "restricted automorphisms");
  }
  return fixed;
}

PermGroup GaloisContext::fix_of_set(const ElementSet& c, const ElementSet& a,
                                    const ElementSet& b) const {
  check_nested(a, b, "A must be a subset of B");
  check_nested(b, c, "B must be a subset of C");
  return stabilizer_pointwise(relative_aut(c, a), positions_in(c, b));
}

CodeSearch GaloisContext::find_code(const TupleSet& f) const {
  for (const auto& t : f) m_.check_elements(t);
  CodeSearch result;
  result.setwise = setwise_stabilizer(aut_, f, options_.element_cap);
  const ElementSet candidates = fixed_points(result.setwise);
  const auto target = result.setwise.order();
  for_each_combination(candidates.members(), options_.max_len, [&](const Tuple& t) {
    if (stabilizer_pointwise(aut_, t).order() == target) {
      result.code = t;
      return true;
    }
    return false;
  });
  if (!result.code) {
    result.certified_absent = stabilizer_pointwise(aut_, candidates.as_tuple()).order() != target;
  }
  return result;
}

CodingReport GaloisContext::codes_finite_sets(std::size_t max_set_size) const {
  CodingReport report;
  report.max_set_size = max_set_size;
  report.max_len = options_.max_len;
  const auto elements = aut_.elements(options_.element_cap);
  const auto universe = m_.universe();
  for_each_combination(universe.members(), max_set_size, [&](const Tuple& set) {
    if (set.empty()) return false;
    // skip sets that are not the lexicographically least in their orbit
    for (const auto& g : elements) {
      Tuple image = g.apply(set);
      std::sort(image.begin(), image.end());
      if (image < set) return false;
    }
    ++report.sets_checked;
    TupleSet f;
    for (ElementId x : set) f.insert(Tuple{x});
    auto search = find_code(f);
    if (!search.code) report.uncoded.push_back({std::move(f), search.certified_absent});
    return false;
  });
  return report;
}

Tuple GaloisContext::multisymmetric_code(const TupleSet& f) const {
  for (const auto& t : f) m_.check_elements(t);
  const FieldTables field(m_);
  Tuple code = multisymmetric_coefficients(field, f);
  const PermGroup setwise = setwise_stabilizer(aut_, f, options_.element_cap);
  const PermGroup pointwise = stabilizer_pointwise(aut_, code);
  if (!(setwise == pointwise)) {
    throw LogicError("multi-symmetric coefficients fail the code property: |Stab(F)| = " +
                     std::to_string(setwise.order()) + ", |Stab(code)| = " +
                     std::to_string(pointwise.order()));
  }
  return code;
}

// ---------------------------------------------------------------------------
// Duality

GaloisReport GaloisContext::verify_galois_correspondence(const ElementSet& a_in,
                                                         const ElementSet& c) const {
  check_nested(a_in, c, "A must be a subset of C");
  GaloisReport report;
  report.requested_base = a_in;
  report.top = c;

  if (dcl(c) != c) {
    throw HypothesisError("C = " + describe_set(m_, c) + " is not definably closed");
  }
  const ElementSet a = dcl(a_in);
  if (a != a_in) {
    report.notes.push_back("base " + describe_set(m_, a_in) + " replaced by its definable closure " +
                           describe_set(m_, a));
  }
  report.base = a;
  if (!is_normal_extension(a, c)) {
    throw HypothesisError("C is not a normal extension of A");
  }

  const PermGroup fix_a = fixing(a);
  const PermGroup g = mtg::relative_aut(fix_a, c);
  report.group = g;
  const auto subgroups = all_subgroups(g, options_.subgroup_cap);

  // subgroup side: H -> Fix(H) -> Fix(Fix(H))
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    SubgroupEntry e;
    e.group = subgroups[i];
    e.fixed = fix_of_subgroup(c, e.group);
    const PermGroup back = stabilizer_pointwise(g, positions_in(c, e.fixed));
    e.closure_order = back.order();
    e.closed = back == e.group;
    if (!e.closed) {
      report.failures.push_back(
          {FailureKind::Subgroup, i,
           "subgroup of order " + std::to_string(e.group.order()) + " fixes " +
               describe_set(m_, e.fixed) + ", whose fixing group has order " +
               std::to_string(e.closure_order)});
    }
    report.subgroups.push_back(std::move(e));
  }

  // set side: every definably closed B with A <= B <= C
  if (c.size() > 64) throw CapExceeded("intermediate enumeration supports at most 64 points");
  const auto base_pos = positions_in(c, a);
  std::uint64_t free_mask = 0;
  for (std::size_t p = 0; p < c.size(); ++p) free_mask |= std::uint64_t{1} << p;
  for (ElementId p : base_pos) free_mask &= ~(std::uint64_t{1} << p);
  if (static_cast<std::size_t>(__builtin_popcountll(free_mask)) > options_.max_free_points) {
    throw CapExceeded("too many points between A and C for intermediate enumeration");
  }
  std::vector<std::uint64_t> fixed_masks;
  for (const auto& e : g.elements(options_.element_cap)) {
    std::uint64_t mask = 0;
    for (std::size_t p = 0; p < c.size(); ++p) {
      if (e.fixes(static_cast<ElementId>(p))) mask |= std::uint64_t{1} << p;
    }
    fixed_masks.push_back(mask);
  }
  std::vector<ElementSet> sets;
  for (auto mask : closed_intermediate_masks(fixed_masks, free_mask)) {
    ElementSet b;
    for (std::size_t p = 0; p < c.size(); ++p) {
      if ((mask >> p) & 1u) b.insert(c.members()[p]);
    }
    // the same set computed inside M rather than inside Aut(C/A)
    if (dcl(b) != b) throw LogicError("intermediate set " + describe_set(m_, b) + " is not closed");
    sets.push_back(std::move(b));
  }
  std::sort(sets.begin(), sets.end(), [](const ElementSet& x, const ElementSet& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  for (std::size_t j = 0; j < sets.size(); ++j) {
    IntermediateEntry e;
    e.set = sets[j];
    const PermGroup fix_b = stabilizer_pointwise(g, positions_in(c, e.set));
    e.fixing_order = fix_b.order();
    e.closure = fix_of_subgroup(c, fix_b);
    e.closed = e.closure == e.set;
    if (!e.closed) {
      report.failures.push_back({FailureKind::Intermediate, j,
                                 "set " + describe_set(m_, e.set) + " closes to " +
                                     describe_set(m_, e.closure)});
    }
    report.intermediates.push_back(std::move(e));
  }

  for (std::size_t i = 0; i < report.subgroups.size(); ++i) {
    if (!report.subgroups[i].closed) continue;
    for (std::size_t j = 0; j < report.intermediates.size(); ++j) {
      if (report.intermediates[j].set == report.subgroups[i].fixed) {
        report.pairs.emplace_back(i, j);
        break;
      }
    }
  }
  if (report.failures.empty() && (report.subgroups.size() != report.intermediates.size() ||
                                  report.pairs.size() != report.subgroups.size())) {
    report.failures.push_back({FailureKind::Count, 0,
                               std::to_string(report.subgroups.size()) + " subgroups vs " +
                                   std::to_string(report.intermediates.size()) +
                                   " intermediate sets"});
  }

  // codes of generator orbits, the device that separates H from larger groups
  report.generator = find_generator(a, c);
  if (report.generator) {
    const Tuple gen_pos = positions_in(c, ElementSet(*report.generator));
    bool all_coded = true;
    for (auto& e : report.subgroups) {
      TupleSet f;
      for (const auto& t : orbit(e.group, gen_pos)) {
        Tuple lifted;
        for (ElementId p : t) lifted.push_back(c.members()[p]);
        f.insert(std::move(lifted));
      }
      e.orbit_code = find_code(f).code;
      all_coded = all_coded && e.orbit_code.has_value();
    }
    report.coding_verdict = all_coded;
  } else {
    report.notes.push_back("no generator of C over A within the length bound; coding not checked");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Towers

bool TowerReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const TowerCheck& c) { return c.status == CheckStatus::Fail; });
}

TowerReport GaloisContext::verify_tower(const ElementSet& a_in, const ElementSet& b,
                                        const ElementSet& c) const {
  check_nested(a_in, b, "A must be a subset of B");
  check_nested(b, c, "B must be a subset of C");
  TowerReport r;
  const ElementSet a = dcl(a_in);
  if (a != a_in) {
    r.notes.push_back("base " + describe_set(m_, a_in) + " replaced by its definable closure " +
                      describe_set(m_, a));
  }
  for (const auto* s : {&a, &b, &c}) {
    if (dcl(*s) != *s) throw HypothesisError(describe_set(m_, *s) + " is not definably closed");
  }
  if (!a.is_subset_of(b)) throw HypothesisError("dcl(A) is not a subset of B");
  r.base = a;
  r.middle = b;
  r.top = c;

  auto generator = [&](const ElementSet& lo, const ElementSet& hi) {
    auto gen = find_generator(lo, hi);
    if (!gen) {
      throw Inconclusive("no generator of " + describe_set(m_, hi) + " over " +
                         describe_set(m_, lo) + " within the length bound");
    }
    return *gen;
  };
  r.gen_top_base = generator(a, c);
  r.gen_top_middle = generator(b, c);
  r.gen_middle_base = generator(a, b);
  r.deg_top_base = orbit_over(r.gen_top_base, a).degree;
  r.deg_top_middle = orbit_over(r.gen_top_middle, b).degree;
  r.deg_middle_base = orbit_over(r.gen_middle_base, a).degree;
  r.aut_top_base = extension_aut(c, a).order();
  r.aut_top_middle = extension_aut(c, b).order();
  r.aut_middle_base = extension_aut(b, a).order();
  r.middle_normal = is_normal_extension(a, b);
  r.top_normal = is_normal_extension(a, c);
  r.top_normal_middle = is_normal_extension(b, c);

  auto add = [&](std::string name, std::optional<bool> ok, std::string witness) {
    TowerCheck check{std::move(name), CheckStatus::NotApplicable, std::move(witness)};
    if (ok) check.status = *ok ? CheckStatus::Pass : CheckStatus::Fail;
    r.checks.push_back(std::move(check));
  };
  auto num = [](auto v) { return std::to_string(v); };

  add("degree_multiplicativity", r.deg_top_base == r.deg_top_middle * r.deg_middle_base,
      num(r.deg_top_base) + " = " + num(r.deg_top_middle) + " * " + num(r.deg_middle_base));

  auto iff_check = [&](const char* pair, std::size_t deg, std::uint64_t aut, bool normal) {
    add(std::string("degree_equals_aut_order_iff_normal[") + pair + "]",
        (deg == aut) == normal,
        "deg " + num(deg) + ", |Aut| " + num(aut) + ", normal " + (normal ? "yes" : "no"));
  };
  iff_check("B/A", r.deg_middle_base, r.aut_middle_base, r.middle_normal);
  iff_check("C/B", r.deg_top_middle, r.aut_top_middle, r.top_normal_middle);
  iff_check("C/A", r.deg_top_base, r.aut_top_base, r.top_normal);

  add("normal_over_intermediate",
      r.top_normal ? std::optional<bool>(r.top_normal_middle) : std::nullopt,
      std::string("C normal over A: ") + (r.top_normal ? "yes" : "no") + ", over B: " +
          (r.top_normal_middle ? "yes" : "no"));

  if (r.top_normal) {
    const PermGroup g = relative_aut(c, a);
    const PermGroup h = relative_aut(c, b);
    r.subgroup_normal = is_normal_subgroup(h, g);
    add("normal_subgroup_iff_normal_extension", *r.subgroup_normal == r.middle_normal,
        std::string("Aut(C/B) normal: ") + (*r.subgroup_normal ? "yes" : "no") +
            ", B normal over A: " + (r.middle_normal ? "yes" : "no"));
    if (r.middle_normal) {
      const Restriction res = restrict_to_invariant_set(g, ElementSet(positions_in(c, b)));
      const PermGroup aut_ba = extension_aut(b, a);
      const bool surjective = res.image == aut_ba;
      const bool kernel_ok = res.kernel == h;
      const bool product = g.order() == h.order() * aut_ba.order();
      r.exact = surjective && kernel_ok && product;
      add("exact_restriction_sequence", *r.exact,
          num(g.order()) + " = " + num(h.order()) + " * " + num(aut_ba.order()) +
              ", image " + num(res.image.order()) + ", kernel " + num(res.kernel.order()));
    } else {
      add("exact_restriction_sequence", std::nullopt, "B not normal over A");
    }
  } else {
    add("normal_subgroup_iff_normal_extension", std::nullopt, "C not normal over A");
    add("exact_restriction_sequence", std::nullopt, "C not normal over A");
  }

  const auto split = is_splitting_extension(a, b);
  add("closed_splitting_is_normal", split.splitting ? std::optional<bool>(r.middle_normal) : std::nullopt,
      split.splitting ? "splits " + format_tuple(m_, *split.witness) : "B is not a splitting extension");
  return r;
}

}  // namespace mtg

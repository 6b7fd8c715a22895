#include "mtg/lemma_suite.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "mtg/error.hpp"

namespace mtg {

namespace {

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::size_t n) : rng_(seed), n_(n) {}

  std::size_t below(std::size_t k) {
    return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng_);
  }

  ElementSet subset(std::size_t max_size) { return subset_of(ElementSet::range(n_), max_size); }

  ElementSet subset_of(const ElementSet& pool, std::size_t max_size) {
    std::vector<ElementId> members = pool.members();
    const std::size_t size = below(std::min(max_size, members.size()) + 1);
    std::shuffle(members.begin(), members.end(), rng_);
    members.resize(size);
    return ElementSet(std::move(members));
  }

  Tuple tuple(std::size_t max_len) {
    Tuple t(1 + below(max_len));
    for (auto& x : t) x = static_cast<ElementId>(below(n_));
    return t;
  }

 private:
  std::mt19937_64 rng_;
  std::size_t n_;
};

class Tallies {
 public:
  void record(const std::string& name, bool ok, const std::function<std::string()>& why) {
    auto& t = get(name);
    ++t.checked;
    if (!ok) {
      ++t.violations;
      if (t.examples.size() < 5) t.examples.push_back(why());
    }
  }
  void skip(const std::string& name) { ++get(name).skipped; }
  std::vector<PropertyTally> take() { return std::move(list_); }

 private:
  PropertyTally& get(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      it = index_.emplace(name, list_.size()).first;
      list_.push_back(PropertyTally{name, 0, 0, 0, {}});
    }
    return list_[it->second];
  }

  std::map<std::string, std::size_t> index_;
  std::vector<PropertyTally> list_;
};

std::uint64_t mix(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ull;
  for (unsigned char ch : name) h = (h ^ ch) * 1099511628211ull;
  return h;
}

}  // namespace

bool PropertyReport::passed() const {
  for (const auto& t : tallies) {
    if (t.violations) return false;
  }
  return !(duality_expected && duality && !duality->passed());
}

PropertyReport run_property_suite(const GaloisContext& ctx, const PropertyOptions& options) {
  const Structure& m = ctx.structure();
  Sampler rnd(mix(options.seed, m.name()), m.size());
  Tallies tally;
  auto set_text = [&](const ElementSet& s) { return format_set(m, s); };

  for (std::size_t inst = 0; inst < options.instances; ++inst) {
    // closure laws
    const ElementSet a0 = rnd.subset(2);
    const ElementSet a1 = a0.united(rnd.subset(1));
    {
      const ElementSet d0 = ctx.dcl(a0), d1 = ctx.dcl(a1);
      const ElementSet c0 = ctx.acl(a0), c1 = ctx.acl(a1);
      const bool ok = a0.is_subset_of(d0) && ctx.dcl(d0) == d0 && d0.is_subset_of(d1) &&
                      a0.is_subset_of(c0) && ctx.acl(c0) == c0 && c0.is_subset_of(c1) &&
                      d0.is_subset_of(c0);
      tally.record("closure_laws", ok, [&] { return "A = " + set_text(a0); });
    }

    // orbit-stabilizer
    const Tuple b = rnd.tuple(2);
    {
      const PermGroup g = ctx.fixing(a0);
      const auto orbit_size = ctx.orbit_over(b, a0).degree;
      const auto stab = stabilizer_pointwise(g, b).order();
      tally.record("orbit_stabilizer", g.order() % orbit_size == 0 && orbit_size * stab == g.order(),
                   [&] { return "b = " + format_tuple(m, b) + " over " + set_text(a0); });
    }

    // a closed splitting extension is normal
    {
      const ElementSet spread = entries_of(ctx.orbit_over(b, a0).orbit);
      const ElementSet split = ctx.dcl(a0.united(spread));
      tally.record("closed_splitting_is_normal", ctx.is_normal_extension(a0, split),
                   [&] { return "B = " + set_text(split) + " over " + set_text(a0); });
    }

    // |Aut(B/A)| = |B n O(b/A)| for B = dcl(A b)
    {
      const ElementSet bb = ctx.dcl(a0.united(ElementSet(b)));
      const auto orb = ctx.orbit_over(b, a0).orbit;
      const auto inside = static_cast<std::uint64_t>(std::count_if(
          orb.begin(), orb.end(), [&](const Tuple& t) { return ElementSet(t).is_subset_of(bb); }));
      const auto aut = ctx.extension_aut(bb, a0).order();
      tally.record("aut_count_matches_orbit_trace", aut == inside, [&] {
        return "B = " + set_text(bb) + ": |Aut| " + std::to_string(aut) + " vs " +
               std::to_string(inside);
      });
    }

    // deg(B/A) = |Aut(B/A)| iff B normal over A, closed and non-closed B
    {
      const ElementSet extra = rnd.subset(2);
      const ElementSet raw = a0.united(extra);
      const ElementSet bb = inst % 2 == 0 ? ctx.dcl(raw) : raw;
      try {
        const auto deg = ctx.degree_of_extension(a0, bb);
        const auto aut = ctx.extension_aut(bb, a0).order();
        const bool normal = ctx.is_normal_extension(a0, bb);
        tally.record("degree_equals_aut_order_iff_normal", (deg == aut) == normal, [&] {
          return "B = " + set_text(bb) + " over " + set_text(a0) + ": deg " +
                 std::to_string(deg) + ", |Aut| " + std::to_string(aut);
        });
      } catch (const Inconclusive&) {
        tally.skip("degree_equals_aut_order_iff_normal");
      }
    }

    // degrees multiply in towers
    {
      const ElementSet a = ctx.dcl(a0);
      const ElementSet mid = ctx.dcl(a.united(rnd.subset(1)));
      const ElementSet top = ctx.dcl(mid.united(rnd.subset(1)));
      try {
        const auto ca = ctx.degree_of_extension(a, top);
        const auto cb = ctx.degree_of_extension(mid, top);
        const auto ba = ctx.degree_of_extension(a, mid);
        tally.record("degree_multiplicativity", ca == cb * ba, [&] {
          return set_text(a) + " <= " + set_text(mid) + " <= " + set_text(top) + ": " +
                 std::to_string(ca) + " vs " + std::to_string(cb) + "*" + std::to_string(ba);
        });
      } catch (const Inconclusive&) {
        tally.skip("degree_multiplicativity");
      }
    }

    // towers under a normal top: subgroup normality, exactness, Fix connection
    {
      const ElementSet a = ctx.dcl(a0);
      const Tuple c_seed{static_cast<ElementId>(rnd.below(m.size()))};
      const ElementSet top = ctx.dcl(a.united(entries_of(ctx.orbit_over(c_seed, a).orbit)));
      const ElementSet mid = ctx.dcl(a.united(rnd.subset_of(top, 2)));
      const PermGroup g = ctx.relative_aut(top, a);
      const PermGroup h = ctx.relative_aut(top, mid);
      const bool mid_normal = ctx.is_normal_extension(a, mid);

      tally.record("normal_over_intermediate", ctx.is_normal_extension(mid, top),
                   [&] { return "C = " + set_text(top) + " over " + set_text(mid); });
      tally.record("normal_subgroup_iff_normal_extension",
                   is_normal_subgroup(h, g) == mid_normal, [&] {
                     return set_text(a) + " <= " + set_text(mid) + " <= " + set_text(top);
                   });
      if (mid_normal) {
        Tuple mid_pos;
        for (ElementId x : mid) mid_pos.push_back(static_cast<ElementId>(*top.position(x)));
        const Restriction res = restrict_to_invariant_set(g, ElementSet(mid_pos));
        const PermGroup aut_ba = ctx.relative_aut(mid, a);
        const bool ok = res.image == aut_ba && res.kernel == h &&
                        g.order() == h.order() * aut_ba.order();
        tally.record("exact_restriction_sequence", ok, [&] {
          return set_text(a) + " <= " + set_text(mid) + " <= " + set_text(top);
        });
      }

      // antitone Fix maps
      const auto elems = g.elements(ctx.options().element_cap);
      std::vector<Permutation> pick1, pick2;
      for (std::size_t k = rnd.below(2); k-- > 0;) pick1.push_back(elems[rnd.below(elems.size())]);
      pick2 = pick1;
      for (std::size_t k = rnd.below(3); k-- > 0;) pick2.push_back(elems[rnd.below(elems.size())]);
      const PermGroup h1 = close_group(g.degree(), pick1);
      const PermGroup h2 = close_group(g.degree(), pick2);
      const ElementSet f1 = ctx.fix_of_subgroup(top, h1);
      const ElementSet f2 = ctx.fix_of_subgroup(top, h2);
      const ElementSet b1 = a.united(rnd.subset_of(top, 2));
      const ElementSet b2 = b1.united(rnd.subset_of(top, 2));
      const PermGroup g1 = ctx.fix_of_set(top, a, b1);
      const PermGroup g2 = ctx.fix_of_set(top, a, b2);
      const bool ok = f2.is_subset_of(f1) && g2.is_subgroup_of(g1) &&
                      h1.is_subgroup_of(ctx.fix_of_set(top, a, f1)) &&
                      b1.is_subset_of(ctx.fix_of_subgroup(top, g1));
      tally.record("antitone_fix_connection", ok, [&] {
        return "C = " + set_text(top) + ", B1 = " + set_text(b1) + ", B2 = " + set_text(b2);
      });
    }
  }

  PropertyReport report;
  report.structure = m.name();
  report.instances = options.instances;
  report.seed = options.seed;
  report.tallies = tally.take();
  report.coding = ctx.codes_finite_sets(options.coding_set_size);
  report.duality = ctx.verify_galois_correspondence(ctx.dcl({}), m.universe());
  report.duality_expected = report.coding.codes();
  return report;
}

}  // namespace mtg

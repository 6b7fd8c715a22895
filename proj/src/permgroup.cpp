#include "mtg/permgroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_map>

#include "mtg/error.hpp"

namespace mtg {

// ---------------------------------------------------------------------------
// Stabilizer chain

PermGroup PermGroup::trivial(std::size_t degree) { return close_group(degree, {}); }

void PermGroup::rebuild(Level& level) const {
  level.orbit.assign(1, level.base);
  level.rep_index.assign(degree_, -1);
  level.reps.assign(1, Permutation::identity(degree_));
  level.rep_index[level.base] = 0;
  for (std::size_t k = 0; k < level.orbit.size(); ++k) {
    const ElementId x = level.orbit[k];
    for (const auto& s : level.gens) {
      const ElementId y = s(x);
      if (level.rep_index[y] >= 0) continue;
      level.rep_index[y] = static_cast<std::int32_t>(level.reps.size());
      level.reps.push_back(s * level.reps[static_cast<std::size_t>(level.rep_index[x])]);
      level.orbit.push_back(y);
    }
  }
}

void PermGroup::add_level(ElementId point) {
  Level level;
  level.base = point;
  rebuild(level);
  levels_.push_back(std::move(level));
}

std::pair<Permutation, std::size_t> PermGroup::strip(Permutation h, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const Level& level = levels_[l];
    const auto idx = level.rep_index[h(level.base)];
    if (idx < 0) return {std::move(h), l};
    h = level.reps[static_cast<std::size_t>(idx)].inverse() * h;
  }
  return {std::move(h), levels_.size()};
}

void PermGroup::schreier_sims(const std::vector<ElementId>& base_order) {
  auto in_base = [&](ElementId x) {
    return std::any_of(levels_.begin(), levels_.end(), [x](const Level& l) { return l.base == x; });
  };
  auto first_moved = [&](const Permutation& p) {
    for (ElementId x : base_order) {
      if (!p.fixes(x) && !in_base(x)) return x;
    }
    throw LogicError("element fixes every point but is not the identity");
  };
  auto fixes_base_prefix = [&](const Permutation& p, std::size_t depth) {
    for (std::size_t l = 0; l < depth; ++l) {
      if (!p.fixes(levels_[l].base)) return false;
    }
    return true;
  };

  for (const auto& s : generators_) {
    if (fixes_base_prefix(s, levels_.size())) add_level(first_moved(s));
  }
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    levels_[l].gens.clear();
    for (const auto& s : generators_) {
      if (fixes_base_prefix(s, l)) levels_[l].gens.push_back(s);
    }
    rebuild(levels_[l]);
  }

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    const auto li = static_cast<std::size_t>(i);
    for (std::size_t oi = 0; oi < levels_[li].orbit.size() && !restarted; ++oi) {
      for (std::size_t si = 0; si < levels_[li].gens.size(); ++si) {
        const Level& level = levels_[li];
        const ElementId x = level.orbit[oi];
        const Permutation& s = level.gens[si];
        const auto& ux = level.reps[static_cast<std::size_t>(level.rep_index[x])];
        const auto& uy = level.reps[static_cast<std::size_t>(level.rep_index[s(x)])];
        Permutation schreier = uy.inverse() * (s * ux);
        if (schreier.is_identity()) continue;
        auto [residue, j] = strip(std::move(schreier), li + 1);
        if (residue.is_identity()) continue;
        if (j == levels_.size()) add_level(first_moved(residue));
        for (std::size_t l = li + 1; l <= j; ++l) {
          levels_[l].gens.push_back(residue);
          rebuild(levels_[l]);
        }
        i = static_cast<std::ptrdiff_t>(j);
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }

  order_ = 1;
  for (const auto& level : levels_) {
    if (__builtin_mul_overflow(order_, level.orbit.size(), &order_)) {
      throw CapExceeded("group order does not fit in 64 bits");
    }
  }
}

PermGroup close_group(std::size_t degree, std::vector<Permutation> gens, const Tuple& base_prefix) {
  PermGroup g;
  g.degree_ = degree;
  for (auto& p : gens) {
    if (p.degree() != degree) {
      throw InputError("generator of degree " + std::to_string(p.degree()) +
                       " in a group of degree " + std::to_string(degree));
    }
    if (p.is_identity()) continue;
    if (std::find(g.generators_.begin(), g.generators_.end(), p) == g.generators_.end()) {
      g.generators_.push_back(std::move(p));
    }
  }
  std::vector<ElementId> base_order;
  std::vector<bool> taken(degree, false);
  for (ElementId x : base_prefix) {
    if (x >= degree) throw InputError("base point out of range");
    if (taken[x]) continue;
    taken[x] = true;
    base_order.push_back(x);
    g.add_level(x);
  }
  for (ElementId x = 0; x < degree; ++x) {
    if (!taken[x]) base_order.push_back(x);
  }
  g.schreier_sims(base_order);
  return g;
}

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) return false;
  auto [residue, j] = strip(p, 0);
  return j == levels_.size() && residue.is_identity();
}

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
  if (degree_ != other.degree_) return false;
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const Permutation& p) { return other.contains(p); });
}

std::vector<ElementId> PermGroup::base() const {
  std::vector<ElementId> out;
  for (const auto& l : levels_) out.push_back(l.base);
  return out;
}

std::vector<std::size_t> PermGroup::fundamental_orbit_lengths() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels_) out.push_back(l.orbit.size());
  return out;
}

std::vector<Permutation> PermGroup::elements(std::uint64_t cap) const {
  if (order_ > cap) {
    throw CapExceeded("group of order " + std::to_string(order_) + " exceeds element cap " +
                      std::to_string(cap));
  }
  std::vector<Permutation> elems{Permutation::identity(degree_)};
  for (std::size_t l = levels_.size(); l-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(elems.size() * levels_[l].reps.size());
    for (const auto& u : levels_[l].reps) {
      for (const auto& e : elems) next.push_back(u * e);
    }
    elems = std::move(next);
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

const std::vector<Permutation>& PermGroup::level_generators(std::size_t depth) const {
  if (depth >= levels_.size()) return empty_;
  return levels_[depth].gens;
}

bool operator==(const PermGroup& a, const PermGroup& b) {
  return a.degree_ == b.degree_ && a.order_ == b.order_ && a.is_subgroup_of(b);
}

PermGroup subgroup_from_elements(std::size_t degree, const std::vector<Permutation>& elements) {
  std::vector<Permutation> gens;
  PermGroup h = PermGroup::trivial(degree);
  for (const auto& e : elements) {
    if (h.contains(e)) continue;
    gens.push_back(e);
    h = close_group(degree, gens);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Orbits and stabilizers

TupleSet orbit(const PermGroup& g, const Tuple& t) {
  for (ElementId x : t) {
    if (x >= g.degree()) throw InputError("tuple entry out of range");
  }
  TupleSet seen{t};
  std::deque<Tuple> queue{t};
  while (!queue.empty()) {
    Tuple cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : g.generators()) {
      Tuple img = s.apply(cur);
      if (seen.insert(img).second) queue.push_back(std::move(img));
    }
  }
  return seen;
}

std::vector<ElementSet> point_orbits(const PermGroup& g) {
  std::vector<ElementSet> out;
  std::vector<bool> done(g.degree(), false);
  for (ElementId x = 0; x < g.degree(); ++x) {
    if (done[x]) continue;
    ElementSet o;
    for (const auto& t : orbit(g, Tuple{x})) {
      o.insert(t[0]);
      done[t[0]] = true;
    }
    out.push_back(std::move(o));
  }
  return out;
}

ElementSet fixed_points(const PermGroup& g) {
  ElementSet out;
  for (ElementId x = 0; x < g.degree(); ++x) {
    if (std::all_of(g.generators().begin(), g.generators().end(),
                    [x](const Permutation& p) { return p.fixes(x); })) {
      out.insert(x);
    }
  }
  return out;
}

PermGroup stabilizer_pointwise(const PermGroup& g, const Tuple& t) {
  for (ElementId x : t) {
    if (x >= g.degree()) throw InputError("tuple entry out of range");
  }
  if (t.empty()) return g;
  const std::size_t depth = ElementSet(t).size();
  PermGroup chain = close_group(g.degree(), g.generators(), t);
  return close_group(g.degree(), chain.level_generators(depth));
}

PermGroup setwise_stabilizer(const PermGroup& g, const TupleSet& f, std::uint64_t cap) {
  if (!f.empty()) {
    const auto len = f.begin()->size();
    for (const auto& t : f) {
      if (t.size() != len) throw InputError("set mixes tuples of different lengths");
      for (ElementId x : t) {
        if (x >= g.degree()) throw InputError("tuple entry out of range");
      }
    }
  }
  std::vector<Permutation> keep;
  for (auto& e : g.elements(cap)) {
    if (e.apply(f) == f) keep.push_back(std::move(e));
  }
  return subgroup_from_elements(g.degree(), keep);
}

// ---------------------------------------------------------------------------
// Subgroup lattice by cyclic extension

namespace {

using Bits = std::vector<std::uint64_t>;

struct Candidate {
  Bits members;
  std::vector<std::uint32_t> gens;
};

struct VectorHash {
  std::size_t operator()(const std::vector<ElementId>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (ElementId x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

class LatticeBuilder {
 public:
  explicit LatticeBuilder(const PermGroup& g) : degree_(g.degree()) {
    elems_ = g.elements();
    n_ = elems_.size();
    words_ = (n_ + 63) / 64;
    std::unordered_map<std::vector<ElementId>, std::uint32_t, VectorHash> index;
    for (std::size_t i = 0; i < n_; ++i) index.emplace(elems_[i].images(), i);
    mul_.resize(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        mul_[i * n_ + j] = index.at((elems_[i] * elems_[j]).images());
      }
    }
  }

  std::vector<PermGroup> run(bool parallel) const {
    Candidate trivial{Bits(words_, 0), {}};
    set(trivial.members, 0);  // identity sorts first
    std::set<Bits> seen{trivial.members};
    std::vector<Candidate> all{trivial};
    std::vector<Candidate> layer{trivial};

    while (!layer.empty()) {
      std::vector<std::vector<Candidate>> found(layer.size());
      const auto count = static_cast<std::ptrdiff_t>(layer.size());
      if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t h = 0; h < count; ++h) {
          found[static_cast<std::size_t>(h)] = extend(layer[static_cast<std::size_t>(h)]);
        }
      } else {
        for (std::ptrdiff_t h = 0; h < count; ++h) {
          found[static_cast<std::size_t>(h)] = extend(layer[static_cast<std::size_t>(h)]);
        }
      }
      std::vector<Candidate> next;
      for (auto& batch : found) {
        for (auto& c : batch) {
          if (seen.insert(c.members).second) {
            next.push_back(c);
            all.push_back(std::move(c));
          }
        }
      }
      layer = std::move(next);
    }

    std::vector<std::pair<std::vector<std::uint32_t>, const Candidate*>> keyed;
    for (const auto& c : all) keyed.emplace_back(indices(c.members), &c);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
      return a.first < b.first;
    });
    std::vector<PermGroup> out;
    out.reserve(keyed.size());
    for (const auto& [key, c] : keyed) {
      std::vector<Permutation> gens;
      for (auto gi : c->gens) gens.push_back(elems_[gi]);
      out.push_back(close_group(degree_, std::move(gens)));
    }
    return out;
  }

 private:
  static bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1u; }
  static void set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

  std::vector<std::uint32_t> indices(const Bits& b) const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < n_; ++i) {
      if (test(b, i)) out.push_back(static_cast<std::uint32_t>(i));
    }
    return out;
  }

  // <H, g> from the members of H by right multiplication with generators.
  Candidate close(const Candidate& h, std::uint32_t g) const {
    Candidate k{h.members, h.gens};
    k.gens.push_back(g);
    std::vector<std::uint32_t> list = indices(h.members);
    for (std::size_t at = 0; at < list.size(); ++at) {
      for (auto s : k.gens) {
        const auto y = mul_[list[at] * n_ + s];
        if (!test(k.members, y)) {
          set(k.members, y);
          list.push_back(y);
        }
      }
    }
    return k;
  }

  std::vector<Candidate> extend(const Candidate& h) const {
    std::vector<Candidate> out;
    std::set<Bits> local;
    const auto h_members = indices(h.members);
    Bits covered = h.members;
    for (std::uint32_t g = 0; g < n_; ++g) {
      if (test(covered, g)) continue;
      // <H, g> = <H, hg> = <H, g^k> for h in H and k prime to ord(g)
      for (auto x : h_members) set(covered, mul_[x * n_ + g]);
      std::vector<std::uint32_t> powers{g};
      while (powers.back() != 0) powers.push_back(mul_[powers.back() * n_ + g]);
      const std::size_t ord = powers.size();
      for (std::size_t k = 1; k <= ord; ++k) {
        if (std::gcd(k, ord) == 1) set(covered, powers[k - 1]);
      }
      Candidate k = close(h, g);
      if (local.insert(k.members).second) out.push_back(std::move(k));
    }
    return out;
  }

  std::size_t degree_;
  std::vector<Permutation> elems_;
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint32_t> mul_;
};

std::vector<PermGroup> subgroups_impl(const PermGroup& g, std::uint64_t cap, bool parallel) {
  if (g.order() > cap) {
    throw CapExceeded("subgroup enumeration: group order " + std::to_string(g.order()) +
                      " exceeds cap " + std::to_string(cap));
  }
  return LatticeBuilder(g).run(parallel);
}

}  // namespace

std::vector<PermGroup> all_subgroups(const PermGroup& g, std::uint64_t cap) {
  return subgroups_impl(g, cap, true);
}

std::vector<PermGroup> all_subgroups_serial(const PermGroup& g, std::uint64_t cap) {
  return subgroups_impl(g, cap, false);
}

bool is_normal_subgroup(const PermGroup& h, const PermGroup& g) {
  if (!h.is_subgroup_of(g)) throw InputError("H is not a subgroup of G");
  for (const auto& x : g.generators()) {
    const auto x_inv = x.inverse();
    for (const auto& y : h.generators()) {
      if (!h.contains(x * y * x_inv)) return false;
    }
  }
  return true;
}

Permutation restrict_permutation(const Permutation& p, const ElementSet& c) {
  std::vector<ElementId> images(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const ElementId x = c.members()[k];
    if (x >= p.degree()) throw InputError("set member out of range");
    auto pos = c.position(p(x));
    if (!pos) throw HypothesisError("set is not invariant under the permutation");
    images[k] = static_cast<ElementId>(*pos);
  }
  return Permutation(std::move(images));
}

Restriction restrict_to_invariant_set(const PermGroup& g, const ElementSet& c) {
  std::vector<Permutation> image_gens;
  for (const auto& s : g.generators()) {
    try {
      image_gens.push_back(restrict_permutation(s, c));
    } catch (const HypothesisError&) {
      throw HypothesisError("set is not setwise invariant under the group (generator " +
                            s.cycles() + ")");
    }
  }
  Restriction r{close_group(c.size(), std::move(image_gens)), stabilizer_pointwise(g, c.as_tuple())};
  if (r.image.order() * r.kernel.order() != g.order()) {
    throw LogicError("restriction: |G| != |image| * |kernel|");
  }
  return r;
}

}  // namespace mtg

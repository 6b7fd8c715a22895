#include "mtg/autgroup.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "mtg/error.hpp"

namespace mtg {

namespace {

using Coloring = std::vector<int>;

// Individualization-refinement search for automorphisms extending a partial
// map. A partial map is encoded as two colorings, one on the source side and
// one on the target side; equal colors must correspond.
class AutSearch {
 public:
  explicit AutSearch(const Structure& m) : m_(m), incidence_(m.size()) {
    for (std::size_t r = 0; r < m.signature().size(); ++r) {
      tuples_.emplace_back(m.table(r).begin(), m.table(r).end());
      for (std::size_t k = 0; k < tuples_[r].size(); ++k) {
        ElementSet entries(tuples_[r][k]);
        for (ElementId x : entries) incidence_[x].push_back({r, k});
      }
    }
  }

  std::size_t size() const { return m_.size(); }

  // Joint color refinement. Returns false when the two sides stop matching.
  bool refine(Coloring& a, Coloring& b) const {
    std::size_t classes = count_classes(a);
    while (true) {
      auto sa = signatures(a);
      auto sb = signatures(b);
      std::map<std::vector<int>, int> ids;
      for (auto& s : sa) ids.emplace(s, 0);
      for (auto& s : sb) ids.emplace(s, 0);
      int next = 0;
      for (auto& [sig, id] : ids) id = next++;
      std::vector<int> hist_a(ids.size(), 0), hist_b(ids.size(), 0);
      for (std::size_t x = 0; x < size(); ++x) {
        a[x] = ids[sa[x]];
        b[x] = ids[sb[x]];
        ++hist_a[static_cast<std::size_t>(a[x])];
        ++hist_b[static_cast<std::size_t>(b[x])];
      }
      if (hist_a != hist_b) return false;
      std::size_t now = count_classes(a);
      if (now == classes) return true;
      classes = now;
    }
  }

  std::optional<Permutation> extend(Coloring a, Coloring b) const {
    if (!refine(a, b)) return std::nullopt;
    const std::size_t n = size();
    std::vector<int> class_size(n + 1, 0);
    for (int c : a) ++class_size[static_cast<std::size_t>(c)];
    std::optional<ElementId> branch;
    for (ElementId x = 0; x < n; ++x) {
      if (class_size[static_cast<std::size_t>(a[x])] > 1) {
        branch = x;
        break;
      }
    }
    if (!branch) {
      std::vector<ElementId> target_of_color(n);
      for (ElementId y = 0; y < n; ++y) target_of_color[static_cast<std::size_t>(b[y])] = y;
      std::vector<ElementId> images(n);
      for (ElementId x = 0; x < n; ++x) images[x] = target_of_color[static_cast<std::size_t>(a[x])];
      Permutation p(std::move(images));
      if (is_automorphism(m_, p)) return p;
      return std::nullopt;
    }
    const ElementId x = *branch;
    const int fresh = static_cast<int>(n);
    for (ElementId y = 0; y < n; ++y) {
      if (b[y] != a[x]) continue;
      Coloring a2 = a, b2 = b;
      a2[x] = fresh;
      b2[y] = fresh;
      if (auto p = extend(std::move(a2), std::move(b2))) return p;
    }
    return std::nullopt;
  }

 private:
  static std::size_t count_classes(const Coloring& c) {
    std::vector<int> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  }

  std::vector<std::vector<int>> signatures(const Coloring& colors) const {
    std::vector<std::vector<int>> out(size());
    for (ElementId x = 0; x < size(); ++x) {
      std::vector<std::vector<int>> parts;
      for (auto [r, k] : incidence_[x]) {
        const Tuple& t = tuples_[r][k];
        std::vector<int> part{static_cast<int>(r), 0};
        for (std::size_t i = 0; i < t.size(); ++i) {
          if (t[i] == x) part[1] |= 1 << i;
          part.push_back(colors[t[i]]);
        }
        parts.push_back(std::move(part));
      }
      std::sort(parts.begin(), parts.end());
      auto& sig = out[x];
      sig.push_back(colors[x]);
      for (const auto& p : parts) {
        sig.push_back(-1);
        sig.insert(sig.end(), p.begin(), p.end());
      }
    }
    return out;
  }

  const Structure& m_;
  std::vector<std::vector<Tuple>> tuples_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incidence_;
};

ElementSet orbit_of_point(std::size_t n, const std::vector<Permutation>& gens, ElementId x) {
  std::vector<ElementId> queue{x};
  std::vector<bool> seen(n, false);
  seen[x] = true;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (const auto& g : gens) {
      ElementId y = g(queue[k]);
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  return ElementSet(std::move(queue));
}

PermGroup search_group(const Structure& m, const ElementSet& fixed_set, const AutOptions& options,
                       bool parallel) {
  const std::size_t n = m.size();
  if (n > options.max_universe) {
    throw CapExceeded("universe of " + std::to_string(n) + " elements exceeds cap " +
                      std::to_string(options.max_universe));
  }
  m.check_elements(fixed_set);
  AutSearch search(m);

  // Individualized points get colors n+1, n+2, ...; the free cell has color 0.
  Coloring base(n, 0);
  int next_color = static_cast<int>(n) + 1;
  for (ElementId a : fixed_set) base[a] = next_color++;

  std::vector<Permutation> gens;
  for (ElementId i = 0; i < n; ++i) {
    Coloring cur = base, twin = base;
    if (!search.refine(cur, twin)) throw LogicError("refinement disagrees with itself");
    const auto cell = std::count(cur.begin(), cur.end(), cur[i]);
    if (cell == 1) continue;

    std::vector<ElementId> candidates;
    for (ElementId y = 0; y < n; ++y) {
      if (y != i && cur[y] == cur[i]) candidates.push_back(y);
    }
    auto probe = [&](ElementId y) {
      Coloring a = cur, b = cur;
      a[i] = static_cast<int>(n);
      b[y] = static_cast<int>(n);
      return search.extend(std::move(a), std::move(b));
    };

    std::vector<Permutation> level;
    ElementSet reached{i};
    if (parallel) {
      std::vector<std::optional<Permutation>> found(candidates.size());
      const auto count = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t k = 0; k < count; ++k) {
        found[static_cast<std::size_t>(k)] = probe(candidates[static_cast<std::size_t>(k)]);
      }
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (reached.contains(candidates[k]) || !found[k]) continue;
        level.push_back(*found[k]);
        reached = orbit_of_point(n, level, i);
      }
    } else {
      for (ElementId y : candidates) {
        if (reached.contains(y)) continue;
        if (auto p = probe(y)) {
          level.push_back(std::move(*p));
          reached = orbit_of_point(n, level, i);
        }
      }
    }
    gens.insert(gens.end(), level.begin(), level.end());
    base[i] = next_color++;
  }
  return close_group(n, std::move(gens));
}

}  // namespace

bool is_automorphism(const Structure& m, const Permutation& p) {
  if (p.degree() != m.size()) return false;
  for (std::size_t r = 0; r < m.signature().size(); ++r) {
    for (const auto& t : m.table(r)) {
      if (!m.holds(r, p.apply(t))) return false;
    }
  }
  return true;
}

PermGroup automorphism_group(const Structure& m, const AutOptions& options) {
  return search_group(m, {}, options, true);
}

PermGroup automorphism_group_serial(const Structure& m, const AutOptions& options) {
  return search_group(m, {}, options, false);
}

PermGroup automorphism_group_fixing(const Structure& m, const ElementSet& a,
                                    const AutOptions& options) {
  return search_group(m, a, options, true);
}

PermGroup relative_aut(const PermGroup& fixing_a, const ElementSet& c) {
  for (ElementId x : c) {
    if (x >= fixing_a.degree()) throw InputError("set member out of range");
  }
  try {
    return restrict_to_invariant_set(fixing_a, c).image;
  } catch (const HypothesisError&) {
    throw HypothesisError("C is not invariant under Aut(M/A); it is not a union of A-orbits");
  }
}

PermGroup relative_aut(const Structure& m, const ElementSet& c, const ElementSet& a,
                       const AutOptions& options) {
  m.check_elements(c);
  m.check_elements(a);
  if (!a.is_subset_of(c)) throw InputError("A is not a subset of C");
  return relative_aut(automorphism_group_fixing(m, a, options), c);
}

}  // namespace mtg

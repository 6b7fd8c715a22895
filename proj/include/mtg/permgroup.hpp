#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mtg/permutation.hpp"
#include "mtg/structure.hpp"

namespace mtg {

inline constexpr std::uint64_t kDefaultElementCap = 1'000'000;
inline constexpr std::uint64_t kDefaultSubgroupCap = 2000;

/// A finite permutation group held as a base and strong generating set.
///
/// The stabilizer chain is built by Schreier-Sims with the base chosen from
/// a caller-supplied prefix followed by the remaining points in ascending
/// order, so identical inputs always give identical chains.
class PermGroup {
 public:
  /// The trivial group on zero points.
  PermGroup() = default;
  static PermGroup trivial(std::size_t degree);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  std::uint64_t order() const noexcept { return order_; }
  bool is_trivial() const noexcept { return order_ == 1; }

  bool contains(const Permutation& p) const;
  bool is_subgroup_of(const PermGroup& other) const;

  /// Base points of the stabilizer chain, outermost first.
  std::vector<ElementId> base() const;
  /// Orbit length of each base point under its stabilizer.
  std::vector<std::size_t> fundamental_orbit_lengths() const;

  /// All elements, sorted lexicographically by image list.
  /// Throws CapExceeded if the order exceeds `cap`.
  std::vector<Permutation> elements(std::uint64_t cap = kDefaultElementCap) const;

  /// Strong generators fixing the first `depth` base points; they generate
  /// the pointwise stabilizer of those points.
  const std::vector<Permutation>& level_generators(std::size_t depth) const;

  /// Same element set.
  friend bool operator==(const PermGroup& a, const PermGroup& b);

 private:
  struct Level {
    ElementId base = 0;
    std::vector<Permutation> gens;
    std::vector<ElementId> orbit;
    std::vector<std::int32_t> rep_index;  // per point: index into reps, or -1
    std::vector<Permutation> reps;        // reps[k](base) == orbit[k]
  };

  friend PermGroup close_group(std::size_t, std::vector<Permutation>, const Tuple&);

  void rebuild(Level& level) const;
  void add_level(ElementId point);
  // Returns the residue and the level where sifting stopped.
  std::pair<Permutation, std::size_t> strip(Permutation h, std::size_t from) const;
  void schreier_sims(const std::vector<ElementId>& base_order);

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Level> levels_;
  std::uint64_t order_ = 1;
  std::vector<Permutation> empty_;
};

/// Closes `gens` into a group on `degree` points. Points of `base_prefix`
/// become the first base points even when the group fixes them.
/// Throws InputError when a generator has a different degree.
PermGroup close_group(std::size_t degree, std::vector<Permutation> gens,
                      const Tuple& base_prefix = {});

/// Smallest generating set picked greedily (ascending) from `elements`.
PermGroup subgroup_from_elements(std::size_t degree, const std::vector<Permutation>& elements);

/// Orbit of a tuple under coordinatewise action.
TupleSet orbit(const PermGroup& g, const Tuple& t);

/// Orbits of single points, each sorted, ordered by least member.
std::vector<ElementSet> point_orbits(const PermGroup& g);

/// Points fixed by every generator.
ElementSet fixed_points(const PermGroup& g);

PermGroup stabilizer_pointwise(const PermGroup& g, const Tuple& t);

/// {g : g(F) = F}. Filters the element list, so |G| is bounded by `cap`.
PermGroup setwise_stabilizer(const PermGroup& g, const TupleSet& f,
                             std::uint64_t cap = kDefaultElementCap);

/// Every subgroup exactly once, ordered by (order, sorted element list).
/// Cyclic extension from the trivial group, one layer at a time; the layer
/// extension runs in parallel.
std::vector<PermGroup> all_subgroups(const PermGroup& g, std::uint64_t cap = kDefaultSubgroupCap);
/// Single-threaded reference for all_subgroups. Same output.
std::vector<PermGroup> all_subgroups_serial(const PermGroup& g,
                                            std::uint64_t cap = kDefaultSubgroupCap);

/// Throws InputError if H is not a subgroup of G.
bool is_normal_subgroup(const PermGroup& h, const PermGroup& g);

/// `p` restricted to the invariant set `c`, acting on positions 0..|c|-1.
Permutation restrict_permutation(const Permutation& p, const ElementSet& c);

struct Restriction {
  PermGroup image;   // acts on positions of C
  PermGroup kernel;  // subgroup of G fixing C pointwise
};

/// Throws HypothesisError if some generator does not map C onto itself.
Restriction restrict_to_invariant_set(const PermGroup& g, const ElementSet& c);

}  // namespace mtg

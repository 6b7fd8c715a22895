#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtg/autgroup.hpp"
#include "mtg/formula.hpp"
#include "mtg/permgroup.hpp"
#include "mtg/structure.hpp"

namespace mtg {

struct GaloisOptions {
  /// Longest tuple tried by generator, splitting and code searches.
  std::size_t max_len = 3;
  std::uint64_t subgroup_cap = kDefaultSubgroupCap;
  std::uint64_t element_cap = kDefaultElementCap;
  /// Intermediate sets are enumerated over all subsets of C \ A.
  std::size_t max_free_points = 24;
  AutOptions aut;
};

/// O(b/A) together with its size deg(b/A). The orbit is the solution set of
/// any irreducible formula of b over A.
struct OrbitDescriptor {
  Tuple base;
  ElementSet params;
  TupleSet orbit;
  std::size_t degree = 0;
};

struct SplittingResult {
  bool splitting = false;
  std::optional<Tuple> witness;
};

struct CodeSearch {
  std::optional<Tuple> code;
  /// No tuple of any length codes F: even fixing every point fixed by the
  /// setwise stabilizer leaves a strictly larger group.
  bool certified_absent = false;
  PermGroup setwise;
};

struct CodingReport {
  std::size_t max_set_size = 0;
  std::size_t max_len = 0;
  std::size_t sets_checked = 0;  // orbit representatives examined
  struct Uncoded {
    TupleSet set;
    bool certified_absent = false;
  };
  std::vector<Uncoded> uncoded;

  bool codes() const { return uncoded.empty(); }
};

struct SubgroupEntry {
  PermGroup group;  // acts on positions of C
  ElementSet fixed;
  std::uint64_t closure_order = 0;  // |Fix(Fix(H))|
  bool closed = false;
  /// Code of the H-orbit of a generator of C over A, when one exists.
  std::optional<Tuple> orbit_code;
};

struct IntermediateEntry {
  ElementSet set;
  std::uint64_t fixing_order = 0;  // |Fix(B)|
  ElementSet closure;              // Fix(Fix(B))
  bool closed = false;
};

enum class FailureKind { Subgroup, Intermediate, Count };

struct Failure {
  FailureKind kind;
  std::size_t index = 0;
  std::string detail;
};

struct GaloisReport {
  ElementSet requested_base;
  ElementSet base;
  ElementSet top;
  PermGroup group;  // Aut(C/A) on positions of C
  std::vector<SubgroupEntry> subgroups;
  std::vector<IntermediateEntry> intermediates;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (subgroup, intermediate)
  std::vector<Failure> failures;
  /// Whether every subgroup's generator orbit had a code; empty when no
  /// generator of C over A was found within the length bound.
  std::optional<bool> coding_verdict;
  std::optional<Tuple> generator;
  std::vector<std::string> notes;

  bool passed() const { return failures.empty(); }
};

enum class CheckStatus { Pass, Fail, NotApplicable };

struct TowerCheck {
  std::string name;
  CheckStatus status = CheckStatus::NotApplicable;
  std::string witness;
};

struct TowerReport {
  ElementSet base, middle, top;
  Tuple gen_top_base, gen_top_middle, gen_middle_base;
  std::size_t deg_top_base = 0, deg_top_middle = 0, deg_middle_base = 0;
  std::uint64_t aut_top_base = 0, aut_top_middle = 0, aut_middle_base = 0;
  bool middle_normal = false;    // B over A
  bool top_normal = false;       // C over A
  bool top_normal_middle = false;  // C over B
  std::optional<bool> subgroup_normal;  // Aut(C/B) normal in Aut(C/A)
  std::optional<bool> exact;            // restriction sequence exact
  std::vector<TowerCheck> checks;
  std::vector<std::string> notes;

  bool passed() const;
};

/// Galois-theoretic queries over one finite structure. Aut(M) is computed
/// once at construction; everything else is derived from it on demand.
class GaloisContext {
 public:
  explicit GaloisContext(Structure m, GaloisOptions options = {});

  const Structure& structure() const noexcept { return m_; }
  const GaloisOptions& options() const noexcept { return options_; }
  const PermGroup& automorphisms() const noexcept { return aut_; }

  /// Aut(M/A).
  PermGroup fixing(const ElementSet& a) const;

  ElementSet dcl(const ElementSet& a) const;
  ElementSet acl(const ElementSet& a) const;
  OrbitDescriptor orbit_over(const Tuple& b, const ElementSet& a) const;

  /// `f`'s free variables are the free identifiers that are not element
  /// names, in order of first occurrence.
  bool is_irreducible_formula(const Formula& f, const Tuple& b, const ElementSet& a) const;
  bool is_irreducible_formula(const Formula& f, const std::vector<std::string>& vars,
                              const Tuple& b, const ElementSet& a) const;

  std::optional<Tuple> find_generator(const ElementSet& a, const ElementSet& b) const;
  /// Throws Inconclusive if no generator exists within max_len.
  std::size_t degree_of_extension(const ElementSet& a, const ElementSet& b) const;
  bool is_normal_extension(const ElementSet& a, const ElementSet& b) const;
  SplittingResult is_splitting_extension(const ElementSet& a, const ElementSet& b) const;

  /// Aut(C/A) for C invariant under Aut(M/A), on positions of C.
  PermGroup relative_aut(const ElementSet& c, const ElementSet& a) const;
  /// Aut(B/A) as maps B -> B that are restrictions of automorphisms fixing
  /// A, on positions of B. Defined for every B containing A.
  PermGroup extension_aut(const ElementSet& b, const ElementSet& a) const;

  ElementSet fix_of_subgroup(const ElementSet& c, const PermGroup& h) const;
  PermGroup fix_of_set(const ElementSet& c, const ElementSet& a, const ElementSet& b) const;

  CodeSearch find_code(const TupleSet& f) const;
  CodingReport codes_finite_sets(std::size_t max_set_size) const;
  Tuple multisymmetric_code(const TupleSet& f) const;

  GaloisReport verify_galois_correspondence(const ElementSet& a, const ElementSet& c) const;
  TowerReport verify_tower(const ElementSet& a, const ElementSet& b, const ElementSet& c) const;

 private:
  void check_nested(const ElementSet& inner, const ElementSet& outer, const char* what) const;

  Structure m_;
  GaloisOptions options_;
  PermGroup aut_;
};

/// Subsets of `universe` of size k in lexicographic order, k = 0..max_len.
/// Stops early when `visit` returns true.
template <class Visit>
bool for_each_combination(const std::vector<ElementId>& universe, std::size_t max_len,
                          Visit&& visit);

/// Definably closed sets between A and C, found as closures of every subset
/// of the free positions. `fixed_masks[g]` is the bitmask of positions of C
/// fixed by the g-th element of Aut(C/A). Returns sorted distinct masks.
std::vector<std::uint64_t> closed_intermediate_masks(const std::vector<std::uint64_t>& fixed_masks,
                                                     std::uint64_t free_mask);
/// Single-threaded reference for closed_intermediate_masks.
std::vector<std::uint64_t> closed_intermediate_masks_serial(
    const std::vector<std::uint64_t>& fixed_masks, std::uint64_t free_mask);

/// Field arithmetic read back from add/3 and mul/3 relation graphs.
class FieldTables {
 public:
  /// Throws InputError unless add and mul are functional graphs with
  /// identities.
  explicit FieldTables(const Structure& m);

  ElementId add(ElementId x, ElementId y) const { return add_[x * n_ + y]; }
  ElementId mul(ElementId x, ElementId y) const { return mul_[x * n_ + y]; }
  ElementId zero() const noexcept { return zero_; }
  ElementId one() const noexcept { return one_; }

 private:
  std::size_t n_;
  std::vector<ElementId> add_, mul_;
  ElementId zero_ = 0, one_ = 0;
};

/// Coefficients of prod_{t in F} (T + sum_j t_j U_j), every monomial of
/// total degree |F| except T^|F|, in descending lexicographic order of the
/// exponent vector (T, U_1, ..., U_n).
Tuple multisymmetric_coefficients(const FieldTables& field, const TupleSet& f);

// ---------------------------------------------------------------------------

template <class Visit>
bool for_each_combination(const std::vector<ElementId>& universe, std::size_t max_len,
                          Visit&& visit) {
  const std::size_t n = universe.size();
  for (std::size_t k = 0; k <= max_len && k <= n; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      Tuple t(k);
      for (std::size_t i = 0; i < k; ++i) t[i] = universe[idx[i]];
      if (visit(t)) return true;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return false;
}

}  // namespace mtg

#pragma once

#include <cstddef>

#include "mtg/permgroup.hpp"
#include "mtg/structure.hpp"

namespace mtg {

struct AutOptions {
  std::size_t max_universe = 16;
};

/// True iff `p` maps every relation table onto itself.
bool is_automorphism(const Structure& m, const Permutation& p);

/// Aut(M). Backtracking over partial bijections with color refinement; the
/// candidate images at each base level are searched in parallel.
PermGroup automorphism_group(const Structure& m, const AutOptions& options = {});

/// Single-threaded reference for automorphism_group. Same generators.
PermGroup automorphism_group_serial(const Structure& m, const AutOptions& options = {});

/// Aut(M/A): automorphisms fixing every element of A.
PermGroup automorphism_group_fixing(const Structure& m, const ElementSet& a,
                                    const AutOptions& options = {});

/// Aut(C/A) as restrictions of Aut(M/A) to C, acting on positions of C.
/// Throws HypothesisError when C is not a union of Aut(M/A)-orbits.
PermGroup relative_aut(const Structure& m, const ElementSet& c, const ElementSet& a,
                       const AutOptions& options = {});

/// Same, from an already computed Aut(M/A).
PermGroup relative_aut(const PermGroup& fixing_a, const ElementSet& c);

}  // namespace mtg

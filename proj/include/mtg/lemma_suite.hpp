#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtg/galois.hpp"

namespace mtg {

struct PropertyOptions {
  std::size_t instances = 200;
  std::uint64_t seed = 1;
  /// Largest set size for the coding check that gates the duality check.
  std::size_t coding_set_size = 3;
};

struct PropertyTally {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t skipped = 0;  // bounded searches that came back empty
  std::vector<std::string> examples;  // first few violations
};

struct PropertyReport {
  std::string structure;
  std::size_t instances = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyTally> tallies;
  CodingReport coding;
  /// Duality over dcl(empty) <= universe; judged only when coding holds.
  std::optional<GaloisReport> duality;
  bool duality_expected = false;

  bool passed() const;
};

/// Randomized checks of the Galois-theoretic laws on one structure:
/// closure laws, orbit-stabilizer, closed splitting extensions are normal,
/// degree multiplicativity in towers, |Aut(B/A)| = |B n O(b/A)|,
/// deg = |Aut| iff normal, normal subgroup iff normal extension, the exact
/// restriction sequence, the antitone Fix connection, and the duality.
PropertyReport run_property_suite(const GaloisContext& ctx, const PropertyOptions& options = {});

}  // namespace mtg

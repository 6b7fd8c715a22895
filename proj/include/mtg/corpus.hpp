#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mtg/structure.hpp"

namespace mtg {

struct CorpusEntry {
  std::string name;
  std::string source;  // structure DSL
  std::string notes;
};

/// Built-in structures: EX_RS, GF4, GF16, C5, RIGID3.
const std::vector<CorpusEntry>& corpus();

/// Throws InputError for unknown names.
const CorpusEntry& corpus_entry(std::string_view name);
Structure load_corpus(std::string_view name);

/// DSL text for GF(2^bits) with add/3 and mul/3 graphs. `modulus` is a
/// primitive polynomial as a bit pattern (x^4+x+1 is 0b10011). Elements are
/// named 0, 1, w, w2, ..., w{q-2} for powers of the root w.
std::string binary_field_source(const std::string& name, unsigned bits, unsigned modulus);

}  // namespace mtg

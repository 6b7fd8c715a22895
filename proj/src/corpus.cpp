#include "mtg/corpus.hpp"

#include <sstream>

#include "mtg/error.hpp"

namespace mtg {

namespace {

constexpr const char* kExRs = R"(# Two binary relations on a, b, c, d; e and f carry no structure.
structure EX_RS {
  universe = { a, b, c, d, e, f }
  rel R/2 = { (a,b), (b,a), (c,d), (d,c) }
  rel S/2 = { (a,c), (c,a), (b,d), (d,b) }
}
)";

constexpr const char* kC5 = R"(# Directed 5-cycle.
structure C5 {
  universe = { v0, v1, v2, v3, v4 }
  rel E/2 = { (v0,v1), (v1,v2), (v2,v3), (v3,v4), (v4,v0) }
}
)";

constexpr const char* kRigid3 = R"(# Strict linear order on three points.
structure RIGID3 {
  universe = { p0, p1, p2 }
  rel L/2 = { (p0,p1), (p0,p2), (p1,p2) }
}
)";

std::string field_element_name(unsigned index) {
  if (index == 0) return "0";
  if (index == 1) return "1";
  if (index == 2) return "w";
  return "w" + std::to_string(index - 1);
}

}  // namespace

std::string binary_field_source(const std::string& name, unsigned bits, unsigned modulus) {
  const unsigned q = 1u << bits;
  // antilog[k] = w^k as a bit pattern; log[v] = k
  std::vector<unsigned> antilog(q - 1), log(q, 0);
  unsigned v = 1;
  for (unsigned k = 0; k < q - 1; ++k) {
    antilog[k] = v;
    log[v] = k;
    v <<= 1;
    if (v & q) v ^= modulus;
  }
  if (v != 1) throw InputError("modulus is not primitive");
  // element index: 0 -> 0, k+1 -> w^k
  auto index_of = [&](unsigned value) { return value == 0 ? 0u : log[value] + 1; };
  auto value_of = [&](unsigned index) { return index == 0 ? 0u : antilog[index - 1]; };

  std::ostringstream out;
  out << "# GF(" << q << ") with w a root of the polynomial 0x" << std::hex << modulus << std::dec
      << "\nstructure " << name << " {\n  universe = { ";
  for (unsigned i = 0; i < q; ++i) out << (i ? ", " : "") << field_element_name(i);
  out << " }\n";
  auto emit = [&](const char* rel, auto op) {
    out << "  rel " << rel << "/3 = {";
    for (unsigned x = 0; x < q; ++x) {
      for (unsigned y = 0; y < q; ++y) {
        out << (x || y ? ", " : " ") << "(" << field_element_name(x) << ","
            << field_element_name(y) << "," << field_element_name(op(x, y)) << ")";
      }
    }
    out << " }\n";
  };
  emit("add", [&](unsigned x, unsigned y) { return index_of(value_of(x) ^ value_of(y)); });
  emit("mul", [&](unsigned x, unsigned y) {
    if (x == 0 || y == 0) return 0u;
    return ((x - 1) + (y - 1)) % (q - 1) + 1;
  });
  out << "}\n";
  return out.str();
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"EX_RS", kExRs,
       "four points under two pairings, plus two unrelated points; does not code finite sets"},
      {"GF4", binary_field_source("GF4", 2, 0b111), "GF(4) as add/mul graphs, w^2 = w + 1"},
      {"GF16", binary_field_source("GF16", 4, 0b10011), "GF(16) as add/mul graphs, w^4 = w + 1"},
      {"C5", kC5, "directed 5-cycle, automorphism group cyclic of order 5"},
      {"RIGID3", kRigid3, "3-element strict linear order, no nontrivial automorphisms"},
  };
  return entries;
}

const CorpusEntry& corpus_entry(std::string_view name) {
  for (const auto& e : corpus()) {
    if (e.name == name) return e;
  }
  throw InputError("unknown corpus structure '" + std::string(name) + "'");
}

Structure load_corpus(std::string_view name) { return load_structure(corpus_entry(name).source); }

}  // namespace mtg

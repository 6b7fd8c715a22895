#pragma once

#include <string>

#include "json.hpp"
#include "mtg/galois.hpp"
#include "mtg/lemma_suite.hpp"

namespace mtg {

using Json = nlohmann::ordered_json;

Json set_json(const Structure& m, const ElementSet& s);
Json tuple_json(const Structure& m, const Tuple& t);
/// Cycle notation over element names, e.g. "(a b)(c d)"; "()" for the
/// identity. Point i is element labels[i] when `labels` is given.
std::string named_cycles(const Structure& m, const Permutation& p,
                         const std::vector<ElementId>* labels = nullptr);
/// {"order": n, "generators": [cycle strings]}.
Json group_json(const Structure& m, const PermGroup& g,
                const std::vector<ElementId>* labels = nullptr);

/// Keys, in order: base, top, group_order, subgroups, intermediates, pairs,
/// failures, verdict.
Json to_json(const Structure& m, const GaloisReport& r);
Json to_json(const Structure& m, const TowerReport& r);
Json to_json(const Structure& m, const CodingReport& r);
Json to_json(const Structure& m, const PropertyReport& r);

std::string to_text(const Structure& m, const GaloisReport& r);
std::string to_text(const Structure& m, const TowerReport& r);
std::string to_text(const Structure& m, const CodingReport& r);
std::string to_text(const Structure& m, const PropertyReport& r);

const char* status_name(CheckStatus s);

}  // namespace mtg

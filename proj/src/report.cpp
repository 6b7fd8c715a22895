#include "mtg/report.hpp"

#include <sstream>

namespace mtg {

namespace {

std::string tuple_set_text(const Structure& m, const TupleSet& f) {
  std::string s = "{";
  bool first = true;
  for (const auto& t : f) {
    s += (first ? "" : ",") + format_tuple(m, t);
    first = false;
  }
  return s + "}";
}

const char* kind_name(FailureKind k) {
  switch (k) {
    case FailureKind::Subgroup: return "subgroup";
    case FailureKind::Intermediate: return "intermediate";
    case FailureKind::Count: return "count";
  }
  return "";
}

}  // namespace

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "n/a";
  }
  return "";
}

Json set_json(const Structure& m, const ElementSet& s) {
  Json out = Json::array();
  for (ElementId x : s) out.push_back(m.element_name(x));
  return out;
}

Json tuple_json(const Structure& m, const Tuple& t) {
  Json out = Json::array();
  for (ElementId x : t) out.push_back(m.element_name(x));
  return out;
}

std::string named_cycles(const Structure& m, const Permutation& p,
                         const std::vector<ElementId>* labels) {
  auto name = [&](ElementId x) { return m.element_name(labels ? (*labels)[x] : x); };
  std::string s;
  std::vector<bool> seen(p.degree(), false);
  for (ElementId x = 0; x < p.degree(); ++x) {
    if (seen[x] || p(x) == x) continue;
    s += "(" + name(x);
    seen[x] = true;
    for (ElementId y = p(x); y != x; y = p(y)) {
      s += " " + name(y);
      seen[y] = true;
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

Json group_json(const Structure& m, const PermGroup& g, const std::vector<ElementId>* labels) {
  Json gens = Json::array();
  for (const auto& p : g.generators()) gens.push_back(named_cycles(m, p, labels));
  return Json{{"order", g.order()}, {"generators", gens}};
}

Json to_json(const Structure& m, const GaloisReport& r) {
  const auto& labels = r.top.members();
  Json subgroups = Json::array();
  for (const auto& e : r.subgroups) {
    Json j = group_json(m, e.group, &labels);
    j["fixed"] = set_json(m, e.fixed);
    j["closure_order"] = e.closure_order;
    j["closed"] = e.closed;
    subgroups.push_back(std::move(j));
  }
  Json intermediates = Json::array();
  for (const auto& e : r.intermediates) {
    intermediates.push_back(Json{{"set", set_json(m, e.set)},
                                 {"fixing_order", e.fixing_order},
                                 {"closure", set_json(m, e.closure)},
                                 {"closed", e.closed}});
  }
  Json pairs = Json::array();
  for (auto [i, j] : r.pairs) pairs.push_back(Json{{"subgroup", i}, {"intermediate", j}});
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back(Json{{"kind", kind_name(f.kind)}, {"index", f.index}, {"detail", f.detail}});
  }
  Json out;
  out["base"] = set_json(m, r.base);
  out["top"] = set_json(m, r.top);
  out["group_order"] = r.group.order();
  out["subgroups"] = std::move(subgroups);
  out["intermediates"] = std::move(intermediates);
  out["pairs"] = std::move(pairs);
  out["failures"] = std::move(failures);
  out["verdict"] = r.passed() ? "pass" : "fail";
  return out;
}

Json to_json(const Structure& m, const TowerReport& r) {
  auto opt = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"name", c.name}, {"status", status_name(c.status)}, {"witness", c.witness}});
  }
  Json out;
  out["base"] = set_json(m, r.base);
  out["middle"] = set_json(m, r.middle);
  out["top"] = set_json(m, r.top);
  out["degrees"] = Json{{"C/A", r.deg_top_base}, {"C/B", r.deg_top_middle}, {"B/A", r.deg_middle_base}};
  out["generators"] = Json{{"C/A", tuple_json(m, r.gen_top_base)},
                           {"C/B", tuple_json(m, r.gen_top_middle)},
                           {"B/A", tuple_json(m, r.gen_middle_base)}};
  out["aut_orders"] = Json{{"C/A", r.aut_top_base}, {"C/B", r.aut_top_middle}, {"B/A", r.aut_middle_base}};
  out["normal"] = Json{{"B/A", r.middle_normal}, {"C/A", r.top_normal}, {"C/B", r.top_normal_middle}};
  out["subgroup_normal"] = opt(r.subgroup_normal);
  out["exact"] = opt(r.exact);
  out["checks"] = std::move(checks);
  out["verdict"] = r.passed() ? "pass" : "fail";
  return out;
}

Json to_json(const Structure& m, const CodingReport& r) {
  Json uncoded = Json::array();
  for (const auto& u : r.uncoded) {
    Json set = Json::array();
    for (const auto& t : u.set) set.push_back(tuple_json(m, t));
    uncoded.push_back(Json{{"set", set}, {"certified_absent", u.certified_absent}});
  }
  Json out;
  out["max_set_size"] = r.max_set_size;
  out["max_len"] = r.max_len;
  out["sets_checked"] = r.sets_checked;
  out["uncoded"] = std::move(uncoded);
  out["verdict"] = r.codes() ? "pass" : "fail";
  return out;
}

Json to_json(const Structure& m, const PropertyReport& r) {
  Json tallies = Json::array();
  for (const auto& t : r.tallies) {
    tallies.push_back(Json{{"name", t.name},
                           {"checked", t.checked},
                           {"violations", t.violations},
                           {"skipped", t.skipped},
                           {"examples", t.examples}});
  }
  Json out;
  out["structure"] = r.structure;
  out["instances"] = r.instances;
  out["seed"] = r.seed;
  out["properties"] = std::move(tallies);
  out["coding"] = to_json(m, r.coding);
  out["duality"] = r.duality ? to_json(m, *r.duality) : Json(nullptr);
  out["duality_expected"] = r.duality_expected;
  out["verdict"] = r.passed() ? "pass" : "fail";
  return out;
}

std::string to_text(const Structure& m, const GaloisReport& r) {
  std::ostringstream out;
  const auto& labels = r.top.members();
  out << "A = " << format_set(m, r.base) << "\nC = " << format_set(m, r.top)
      << "\n|Aut(C/A)| = " << r.group.order() << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  out << "subgroups: " << r.subgroups.size() << "\n";
  for (std::size_t i = 0; i < r.subgroups.size(); ++i) {
    const auto& e = r.subgroups[i];
    out << "  [" << i << "] order " << e.group.order() << " <";
    for (std::size_t k = 0; k < e.group.generators().size(); ++k) {
      out << (k ? ", " : "") << named_cycles(m, e.group.generators()[k], &labels);
    }
    out << "> Fix = " << format_set(m, e.fixed) << ", |Fix(Fix)| = " << e.closure_order
        << (e.closed ? "" : "  MISMATCH") << "\n";
  }
  out << "intermediate closed sets: " << r.intermediates.size() << "\n";
  for (std::size_t j = 0; j < r.intermediates.size(); ++j) {
    const auto& e = r.intermediates[j];
    out << "  [" << j << "] " << format_set(m, e.set) << " |Fix| = " << e.fixing_order
        << ", Fix(Fix) = " << format_set(m, e.closure) << (e.closed ? "" : "  MISMATCH") << "\n";
  }
  if (r.coding_verdict) {
    out << "generator orbits coded: " << (*r.coding_verdict ? "yes" : "no") << "\n";
  }
  for (const auto& f : r.failures) out << "failure: " << kind_name(f.kind) << " " << f.index << ": " << f.detail << "\n";
  out << "verdict: " << (r.passed() ? "pass" : "fail") << "\n";
  return out.str();
}

std::string to_text(const Structure& m, const TowerReport& r) {
  std::ostringstream out;
  out << "A = " << format_set(m, r.base) << "\nB = " << format_set(m, r.middle)
      << "\nC = " << format_set(m, r.top) << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  out << "deg(B/A) = " << r.deg_middle_base << " via " << format_tuple(m, r.gen_middle_base)
      << "\ndeg(C/B) = " << r.deg_top_middle << " via " << format_tuple(m, r.gen_top_middle)
      << "\ndeg(C/A) = " << r.deg_top_base << " via " << format_tuple(m, r.gen_top_base) << "\n";
  out << "|Aut(B/A)| = " << r.aut_middle_base << ", |Aut(C/B)| = " << r.aut_top_middle
      << ", |Aut(C/A)| = " << r.aut_top_base << "\n";
  out << "normal: B/A " << (r.middle_normal ? "yes" : "no") << ", C/A "
      << (r.top_normal ? "yes" : "no") << ", C/B " << (r.top_normal_middle ? "yes" : "no") << "\n";
  for (const auto& c : r.checks) {
    out << "  " << status_name(c.status) << "  " << c.name << "  (" << c.witness << ")\n";
  }
  out << "verdict: " << (r.passed() ? "pass" : "fail") << "\n";
  return out.str();
}

std::string to_text(const Structure& m, const CodingReport& r) {
  std::ostringstream out;
  out << "sets checked (orbit representatives, size <= " << r.max_set_size
      << "): " << r.sets_checked << "\n";
  for (const auto& u : r.uncoded) {
    out << "  no code up to length " << r.max_len << ": " << tuple_set_text(m, u.set)
        << (u.certified_absent ? " (no code of any length)" : "") << "\n";
  }
  out << "verdict: " << (r.codes() ? "codes finite sets (bounded)" : "does not code finite sets")
      << "\n";
  return out.str();
}

std::string to_text(const Structure& m, const PropertyReport& r) {
  std::ostringstream out;
  out << r.structure << ": " << r.instances << " instances, seed " << r.seed << "\n";
  for (const auto& t : r.tallies) {
    out << "  " << (t.violations ? "FAIL" : "ok  ") << "  " << t.name << ": " << t.checked
        << " checked, " << t.violations << " violations";
    if (t.skipped) out << ", " << t.skipped << " inconclusive";
    out << "\n";
    for (const auto& e : t.examples) out << "        " << e << "\n";
  }
  out << "  coding: " << (r.coding.codes() ? "yes" : "no") << "\n";
  if (r.duality) {
    out << "  duality over " << format_set(m, r.duality->base) << ": "
        << (r.duality->passed() ? "pass" : "fail")
        << (r.duality_expected ? "" : " (not required: finite sets are not coded)") << "\n";
  }
  out << "verdict: " << (r.passed() ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace mtg

#include "mtg/structure.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "lexer.hpp"
#include "mtg/error.hpp"

namespace mtg {

// ---------------------------------------------------------------------------
// ElementSet

ElementSet::ElementSet(std::initializer_list<ElementId> members)
    : ElementSet(std::vector<ElementId>(members)) {}

ElementSet::ElementSet(std::vector<ElementId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

ElementSet ElementSet::range(std::size_t n) {
  ElementSet s;
  s.members_.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.members_[i] = static_cast<ElementId>(i);
  return s;
}

bool ElementSet::contains(ElementId x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

std::optional<std::size_t> ElementSet::position(ElementId x) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), x);
  if (it == members_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

void ElementSet::insert(ElementId x) {
  auto it = std::lower_bound(members_.begin(), members_.end(), x);
  if (it == members_.end() || *it != x) members_.insert(it, x);
}

ElementSet ElementSet::united(const ElementSet& other) const {
  ElementSet out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out.members_));
  return out;
}

ElementSet ElementSet::intersected(const ElementSet& other) const {
  ElementSet out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out.members_));
  return out;
}

ElementSet ElementSet::minus(const ElementSet& other) const {
  ElementSet out;
  std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                      other.members_.end(), std::back_inserter(out.members_));
  return out;
}

ElementSet entries_of(const TupleSet& tuples) {
  std::vector<ElementId> all;
  for (const auto& t : tuples) all.insert(all.end(), t.begin(), t.end());
  return ElementSet(std::move(all));
}

ElementSet entries_of(const Tuple& tuple) { return ElementSet(tuple); }

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<RelationDecl> relations) : relations_(std::move(relations)) {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].arity == 0) {
      throw InputError("relation '" + relations_[i].name + "' has arity 0");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (relations_[j].name == relations_[i].name) {
        throw InputError("duplicate relation '" + relations_[i].name + "'");
      }
    }
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == name) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Structure

namespace {

constexpr std::size_t kDenseLimit = std::size_t{1} << 22;

std::size_t dense_size(std::size_t n, std::size_t arity) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < arity; ++k) {
    if (total > kDenseLimit / n) return 0;
    total *= n;
  }
  return total;
}

std::size_t dense_index(std::size_t n, const Tuple& t) {
  std::size_t idx = 0;
  for (ElementId x : t) idx = idx * n + x;
  return idx;
}

}  // namespace

Structure::Structure(std::string name, Signature signature, std::vector<std::string> element_names,
                     std::vector<TupleSet> tables)
    : name_(std::move(name)),
      signature_(std::move(signature)),
      element_names_(std::move(element_names)),
      tables_(std::move(tables)) {
  if (element_names_.empty()) throw InputError("universe must be non-empty");
  for (std::size_t i = 0; i < element_names_.size(); ++i) {
    auto [it, inserted] = element_index_.emplace(element_names_[i], static_cast<ElementId>(i));
    if (!inserted) throw InputError("duplicate element '" + element_names_[i] + "'");
  }
  if (tables_.size() != signature_.size()) {
    throw InputError("table count does not match signature");
  }
  const std::size_t n = size();
  dense_.resize(tables_.size());
  for (std::size_t r = 0; r < tables_.size(); ++r) {
    const auto arity = signature_[r].arity;
    for (const auto& t : tables_[r]) {
      if (t.size() != arity) {
        throw InputError("tuple of length " + std::to_string(t.size()) + " in relation '" +
                         signature_[r].name + "' of arity " + std::to_string(arity));
      }
      for (ElementId x : t) {
        if (x >= n) throw InputError("tuple entry out of range in '" + signature_[r].name + "'");
      }
    }
    if (std::size_t cells = dense_size(n, arity); cells != 0) {
      dense_[r].assign(cells, false);
      for (const auto& t : tables_[r]) dense_[r][dense_index(n, t)] = true;
    }
  }
}

const std::string& Structure::element_name(ElementId x) const {
  if (x >= size()) throw InputError("element index " + std::to_string(x) + " out of range");
  return element_names_[x];
}

std::optional<ElementId> Structure::find_element(std::string_view name) const {
  auto it = element_index_.find(std::string(name));
  if (it == element_index_.end()) return std::nullopt;
  return it->second;
}

ElementId Structure::element(std::string_view name) const {
  if (auto x = find_element(name)) return *x;
  throw InputError("unknown element '" + std::string(name) + "'");
}

const TupleSet& Structure::table(std::string_view relation) const {
  auto r = signature_.find(relation);
  if (!r) throw InputError("unknown relation '" + std::string(relation) + "'");
  return tables_[*r];
}

bool Structure::holds(std::size_t relation, const Tuple& t) const {
  const auto& bits = dense_[relation];
  if (!bits.empty()) return bits[dense_index(size(), t)];
  return tables_[relation].count(t) != 0;
}

void Structure::check_elements(const Tuple& t) const {
  for (ElementId x : t) {
    if (x >= size()) throw InputError("element index " + std::to_string(x) + " out of range");
  }
}

void Structure::check_elements(const ElementSet& s) const { check_elements(s.members()); }

bool eval_relation(const Structure& m, std::string_view relation, const Tuple& t) {
  auto r = m.signature().find(relation);
  if (!r) throw InputError("unknown relation '" + std::string(relation) + "'");
  if (m.signature()[*r].arity != t.size()) {
    throw InputError("relation '" + std::string(relation) + "' has arity " +
                     std::to_string(m.signature()[*r].arity) + ", got " +
                     std::to_string(t.size()) + " arguments");
  }
  m.check_elements(t);
  return m.holds(*r, t);
}

// ---------------------------------------------------------------------------
// DSL

Structure load_structure(std::string_view text, const LoadOptions& options) {
  detail::TokenStream ts(detail::tokenize(text));
  ts.expect_word("structure");
  std::string name = ts.expect_identifier().text;
  ts.expect("{");

  ts.expect_word("universe");
  ts.expect("=");
  ts.expect("{");
  std::vector<std::string> elements;
  std::unordered_map<std::string, ElementId> index;
  if (!ts.peek().is("}")) {
    do {
      const auto& tok = ts.expect_identifier();
      if (!index.emplace(tok.text, static_cast<ElementId>(elements.size())).second) {
        detail::TokenStream::fail_at(tok, "duplicate element '" + tok.text + "'");
      }
      elements.push_back(tok.text);
    } while (ts.accept(","));
  }
  const auto& close = ts.expect("}");
  if (elements.empty()) detail::TokenStream::fail_at(close, "universe must be non-empty");
  if (elements.size() > options.max_universe) {
    throw CapExceeded("universe has " + std::to_string(elements.size()) +
                      " elements, cap is " + std::to_string(options.max_universe));
  }

  std::vector<RelationDecl> decls;
  std::vector<TupleSet> tables;
  while (ts.peek().is_word("rel")) {
    ts.next();
    const auto& rel_tok = ts.expect_identifier();
    for (const auto& d : decls) {
      if (d.name == rel_tok.text) {
        detail::TokenStream::fail_at(rel_tok, "duplicate relation '" + rel_tok.text + "'");
      }
    }
    ts.expect("/");
    const auto& arity_tok = ts.peek();
    std::size_t arity = ts.expect_number();
    if (arity == 0) detail::TokenStream::fail_at(arity_tok, "arity must be at least 1");
    ts.expect("=");
    ts.expect("{");
    TupleSet table;
    if (!ts.peek().is("}")) {
      do {
        const auto& open = ts.expect("(");
        Tuple t;
        do {
          const auto& el = ts.expect_identifier();
          auto it = index.find(el.text);
          if (it == index.end()) {
            detail::TokenStream::fail_at(el, "unknown element '" + el.text + "'");
          }
          t.push_back(it->second);
        } while (ts.accept(","));
        ts.expect(")");
        if (t.size() != arity) {
          detail::TokenStream::fail_at(open, "arity mismatch in '" + rel_tok.text + "': expected " +
                                                 std::to_string(arity) + ", got " +
                                                 std::to_string(t.size()));
        }
        table.insert(std::move(t));
      } while (ts.accept(","));
    }
    ts.expect("}");
    decls.push_back({rel_tok.text, arity});
    tables.push_back(std::move(table));
  }
  ts.expect("}");
  if (!ts.at_end()) ts.fail("trailing input after structure");
  return Structure(std::move(name), Signature(std::move(decls)), std::move(elements),
                   std::move(tables));
}

std::string to_dsl(const Structure& m) {
  std::ostringstream out;
  out << "structure " << m.name() << " {\n  universe = { ";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << (i ? ", " : "") << m.element_names()[i];
  }
  out << " }\n";
  for (std::size_t r = 0; r < m.signature().size(); ++r) {
    const auto& decl = m.signature()[r];
    out << "  rel " << decl.name << "/" << decl.arity << " = {";
    bool first = true;
    for (const auto& t : m.table(r)) {
      out << (first ? " " : ", ") << format_tuple(m, t);
      first = false;
    }
    out << (first ? "}\n" : " }\n");
  }
  out << "}\n";
  return out.str();
}

std::string format_tuple(const Structure& m, const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += m.element_name(t[i]);
  }
  return s + ")";
}

std::string format_set(const Structure& m, const ElementSet& set) {
  std::string s = "{";
  bool first = true;
  for (ElementId x : set) {
    if (!first) s += ",";
    s += m.element_name(x);
    first = false;
  }
  return s + "}";
}

}  // namespace mtg

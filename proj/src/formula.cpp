#include "mtg/formula.hpp"

#include <algorithm>

#include "lexer.hpp"
#include "mtg/error.hpp"

namespace mtg {

namespace {

using detail::Token;
using detail::TokenKind;
using detail::TokenStream;

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const Signature& sig)
      : ts_(detail::tokenize(text)), sig_(sig) {}

  Formula parse() {
    Formula f = parse_iff();
    if (!ts_.at_end()) ts_.fail("unexpected token");
    return f;
  }

 private:
  static Formula binary(FormulaKind kind, Formula lhs, Formula rhs) {
    Formula f;
    f.kind = kind;
    f.children.push_back(std::move(lhs));
    f.children.push_back(std::move(rhs));
    return f;
  }

  Formula parse_iff() {
    Formula lhs = parse_implies();
    while (ts_.accept("<->")) lhs = binary(FormulaKind::Iff, std::move(lhs), parse_implies());
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (ts_.accept("->")) return binary(FormulaKind::Implies, std::move(lhs), parse_implies());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (ts_.accept("|")) lhs = binary(FormulaKind::Or, std::move(lhs), parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (ts_.accept("&")) lhs = binary(FormulaKind::And, std::move(lhs), parse_unary());
    return lhs;
  }

  bool at_quantifier() const {
    const Token& t = ts_.peek();
    if (t.is_word("A") || t.is_word("E")) {
      return ts_.peek(1).kind == TokenKind::Identifier && ts_.peek(2).is(".");
    }
    return false;
  }

  Formula parse_unary() {
    if (ts_.accept("~")) {
      Formula f;
      f.kind = FormulaKind::Not;
      f.children.push_back(parse_unary());
      return f;
    }
    const Token& t = ts_.peek();
    if (t.is_word("E") && ts_.peek(1).is("!")) {
      ts_.next();
      ts_.next();
      Formula f;
      f.kind = FormulaKind::ExistsExactly;
      f.count = ts_.expect_number();
      return parse_quantifier_rest(std::move(f));
    }
    if (at_quantifier()) {
      Formula f;
      f.kind = ts_.next().text == "A" ? FormulaKind::ForAll : FormulaKind::Exists;
      return parse_quantifier_rest(std::move(f));
    }
    return parse_primary();
  }

  Formula parse_quantifier_rest(Formula f) {
    const Token& var = ts_.expect_identifier();
    if (std::find(bound_.begin(), bound_.end(), var.text) != bound_.end()) {
      TokenStream::fail_at(var, "variable '" + var.text + "' is already bound here");
    }
    f.symbol = var.text;
    ts_.expect(".");
    bound_.push_back(f.symbol);
    f.children.push_back(parse_iff());
    bound_.pop_back();
    return f;
  }

  Formula parse_primary() {
    if (ts_.accept("(")) {
      Formula f = parse_iff();
      ts_.expect(")");
      return f;
    }
    const Token& head = ts_.expect_identifier();
    if (ts_.accept("(")) {
      Formula f;
      f.kind = FormulaKind::Atom;
      f.symbol = head.text;
      if (!ts_.peek().is(")")) {
        do {
          f.terms.push_back(ts_.expect_identifier().text);
        } while (ts_.accept(","));
      }
      ts_.expect(")");
      auto r = sig_.find(head.text);
      if (!r) TokenStream::fail_at(head, "unknown relation '" + head.text + "'");
      if (sig_[*r].arity != f.terms.size()) {
        TokenStream::fail_at(head, "relation '" + head.text + "' has arity " +
                                       std::to_string(sig_[*r].arity) + ", got " +
                                       std::to_string(f.terms.size()));
      }
      return f;
    }
    ts_.expect("=");
    Formula f;
    f.kind = FormulaKind::Equal;
    f.terms = {head.text, ts_.expect_identifier().text};
    return f;
  }

  TokenStream ts_;
  const Signature& sig_;
  std::vector<std::string> bound_;
};

std::string op_text(FormulaKind k) {
  switch (k) {
    case FormulaKind::And: return " & ";
    case FormulaKind::Or: return " | ";
    case FormulaKind::Implies: return " -> ";
    case FormulaKind::Iff: return " <-> ";
    default: return "";
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
  auto note = [&](const std::string& id) {
    if (std::find(bound.begin(), bound.end(), id) == bound.end() &&
        std::find(out.begin(), out.end(), id) == out.end()) {
      out.push_back(id);
    }
  };
  switch (f.kind) {
    case FormulaKind::Atom:
    case FormulaKind::Equal:
      for (const auto& t : f.terms) note(t);
      return;
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
    case FormulaKind::ExistsExactly:
      bound.push_back(f.symbol);
      collect_free(f.children[0], bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& c : f.children) collect_free(c, bound, out);
  }
}

// Evaluation works on a compiled copy of the tree in which every term is
// already resolved to a variable slot or a constant element.
struct Term {
  bool is_slot = false;
  std::size_t value = 0;  // slot index or ElementId
};

struct Compiled {
  FormulaKind kind = FormulaKind::Equal;
  std::size_t relation = 0;
  std::vector<Term> terms;
  std::size_t slot = 0;
  std::size_t count = 0;
  std::vector<Compiled> children;
};

class Compiler {
 public:
  Compiler(const Structure& m, std::vector<std::string> initial) : m_(m), scope_(initial) {
    slots_ = scope_.size();
  }

  Compiled compile(const Formula& f) {
    Compiled c;
    c.kind = f.kind;
    switch (f.kind) {
      case FormulaKind::Atom: {
        auto r = m_.signature().find(f.symbol);
        if (!r) throw InputError("unknown relation '" + f.symbol + "'");
        if (m_.signature()[*r].arity != f.terms.size()) {
          throw InputError("arity mismatch for relation '" + f.symbol + "'");
        }
        c.relation = *r;
        for (const auto& t : f.terms) c.terms.push_back(resolve(t));
        break;
      }
      case FormulaKind::Equal:
        for (const auto& t : f.terms) c.terms.push_back(resolve(t));
        break;
      case FormulaKind::ForAll:
      case FormulaKind::Exists:
      case FormulaKind::ExistsExactly:
        c.slot = slots_++;
        c.count = f.count;
        scope_.push_back(f.symbol);
        slot_of_.push_back(c.slot);
        c.children.push_back(compile(f.children[0]));
        scope_.pop_back();
        slot_of_.pop_back();
        break;
      default:
        for (const auto& child : f.children) c.children.push_back(compile(child));
    }
    return c;
  }

  std::size_t slot_count() const { return slots_; }

 private:
  Term resolve(const std::string& id) {
    // innermost binding first
    for (std::size_t i = scope_.size(); i-- > 0;) {
      if (scope_[i] == id) {
        std::size_t initial = scope_.size() - slot_of_.size();
        return Term{true, i < initial ? i : slot_of_[i - initial]};
      }
    }
    if (auto x = m_.find_element(id)) return Term{false, *x};
    throw InputError("unbound variable '" + id + "'");
  }

  const Structure& m_;
  std::vector<std::string> scope_;
  std::vector<std::size_t> slot_of_;
  std::size_t slots_ = 0;
};

class Evaluator {
 public:
  Evaluator(const Structure& m, std::size_t slots) : m_(m), env_(slots, 0) {}

  std::vector<ElementId>& env() { return env_; }

  bool eval(const Compiled& c) {
    switch (c.kind) {
      case FormulaKind::Atom: {
        Tuple t(c.terms.size());
        for (std::size_t i = 0; i < c.terms.size(); ++i) t[i] = value(c.terms[i]);
        return m_.holds(c.relation, t);
      }
      case FormulaKind::Equal:
        return value(c.terms[0]) == value(c.terms[1]);
      case FormulaKind::Not:
        return !eval(c.children[0]);
      case FormulaKind::And:
        return eval(c.children[0]) && eval(c.children[1]);
      case FormulaKind::Or:
        return eval(c.children[0]) || eval(c.children[1]);
      case FormulaKind::Implies:
        return !eval(c.children[0]) || eval(c.children[1]);
      case FormulaKind::Iff:
        return eval(c.children[0]) == eval(c.children[1]);
      case FormulaKind::ForAll:
        for (ElementId x = 0; x < m_.size(); ++x) {
          env_[c.slot] = x;
          if (!eval(c.children[0])) return false;
        }
        return true;
      case FormulaKind::Exists:
        for (ElementId x = 0; x < m_.size(); ++x) {
          env_[c.slot] = x;
          if (eval(c.children[0])) return true;
        }
        return false;
      case FormulaKind::ExistsExactly: {
        std::size_t witnesses = 0;
        for (ElementId x = 0; x < m_.size(); ++x) {
          env_[c.slot] = x;
          if (eval(c.children[0]) && ++witnesses > c.count) return false;
        }
        return witnesses == c.count;
      }
    }
    return false;
  }

 private:
  ElementId value(const Term& t) const {
    return t.is_slot ? env_[t.value] : static_cast<ElementId>(t.value);
  }

  const Structure& m_;
  std::vector<ElementId> env_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& signature) {
  return FormulaParser(text, signature).parse();
}

std::string to_string(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::Atom: {
      std::string s = f.symbol + "(";
      for (std::size_t i = 0; i < f.terms.size(); ++i) s += (i ? "," : "") + f.terms[i];
      return s + ")";
    }
    case FormulaKind::Equal:
      return f.terms[0] + " = " + f.terms[1];
    case FormulaKind::Not: {
      const auto& c = f.children[0];
      bool tight = c.kind == FormulaKind::Atom || c.kind == FormulaKind::Not;
      return "~" + (tight ? to_string(c) : "(" + to_string(c) + ")");
    }
    case FormulaKind::ForAll:
      return "(A " + f.symbol + ". " + to_string(f.children[0]) + ")";
    case FormulaKind::Exists:
      return "(E " + f.symbol + ". " + to_string(f.children[0]) + ")";
    case FormulaKind::ExistsExactly:
      return "(E!" + std::to_string(f.count) + " " + f.symbol + ". " + to_string(f.children[0]) +
             ")";
    default:
      return "(" + to_string(f.children[0]) + op_text(f.kind) + to_string(f.children[1]) + ")";
  }
}

std::vector<std::string> free_identifiers(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::vector<std::string> free_variables(const Formula& f, const Structure& m) {
  std::vector<std::string> out;
  for (auto& id : free_identifiers(f)) {
    if (!m.find_element(id)) out.push_back(std::move(id));
  }
  return out;
}

ElementSet parameters(const Formula& f, const Structure& m) {
  ElementSet out;
  for (const auto& id : free_identifiers(f)) {
    if (auto x = m.find_element(id)) out.insert(*x);
  }
  return out;
}

bool evaluate(const Structure& m, const Formula& f, const Assignment& env) {
  std::vector<std::string> names;
  std::vector<ElementId> values;
  for (const auto& [name, value] : env) {
    m.check_elements(Tuple{value});
    names.push_back(name);
    values.push_back(value);
  }
  Compiler compiler(m, names);
  Compiled c = compiler.compile(f);
  Evaluator ev(m, compiler.slot_count());
  std::copy(values.begin(), values.end(), ev.env().begin());
  return ev.eval(c);
}

TupleSet solution_set(const Structure& m, const Formula& f, const std::vector<std::string>& vars) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (vars[i] == vars[j]) throw InputError("variable '" + vars[i] + "' listed twice");
    }
  }
  Compiler compiler(m, vars);
  Compiled c = compiler.compile(f);
  Evaluator ev(m, compiler.slot_count());
  TupleSet out;
  const std::size_t k = vars.size();
  Tuple t(k, 0);
  while (true) {
    std::copy(t.begin(), t.end(), ev.env().begin());
    if (ev.eval(c)) out.insert(t);
    // odometer, last coordinate fastest
    std::size_t i = k;
    while (i > 0 && ++t[i - 1] == m.size()) t[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

}  // namespace mtg

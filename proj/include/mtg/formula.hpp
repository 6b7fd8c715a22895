#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mtg/structure.hpp"

namespace mtg {

enum class FormulaKind {
  Atom,           // symbol(terms...)
  Equal,          // terms[0] = terms[1]
  Not,            // ~children[0]
  And,
  Or,
  Implies,
  Iff,
  ForAll,         // A symbol. children[0]
  Exists,         // E symbol. children[0]
  ExistsExactly,  // E!count symbol. children[0]
};

/// First-order formula over a relational signature.
///
/// Terms are plain identifiers. Whether an identifier is a variable or an
/// element name is decided at evaluation time: bound and assigned variables
/// win, anything else must name an element of the structure.
struct Formula {
  FormulaKind kind = FormulaKind::Equal;
  std::string symbol;              // relation name or bound variable
  std::vector<std::string> terms;  // atom arguments, or the two sides of '='
  std::size_t count = 0;           // witness count for ExistsExactly
  std::vector<Formula> children;

  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Variable-to-element bindings for free variables.
using Assignment = std::map<std::string, ElementId, std::less<>>;

/// Grammar, loosest binding first:
///   iff     := implies ('<->' implies)*          left associative
///   implies := or ('->' implies)?                right associative
///   or      := and ('|' and)*
///   and     := unary ('&' unary)*
///   unary   := '~' unary | quant | primary
///   quant   := ('A' | 'E' | 'E!' n) ident '.' iff
///   primary := '(' iff ')' | ident '(' ident, ... ')' | ident '=' ident
Formula parse_formula(std::string_view text, const Signature& signature);

/// Fully parenthesized rendering that parse_formula reads back to the same AST.
std::string to_string(const Formula& f);

/// Identifiers occurring free, in order of first occurrence.
std::vector<std::string> free_identifiers(const Formula& f);

/// Free identifiers that do not name an element of `m`.
std::vector<std::string> free_variables(const Formula& f, const Structure& m);

/// Free identifiers that name elements of `m` (the formula's parameters).
ElementSet parameters(const Formula& f, const Structure& m);

bool evaluate(const Structure& m, const Formula& f, const Assignment& env = {});

/// All tuples t (lexicographic) with m |= f[vars := t]. Every free
/// identifier outside `vars` must name an element.
TupleSet solution_set(const Structure& m, const Formula& f, const std::vector<std::string>& vars);

}  // namespace mtg

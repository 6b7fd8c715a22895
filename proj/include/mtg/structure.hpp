#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mtg {

/// Dense index of a universe element, 0..n-1 in declaration order.
using ElementId = std::uint32_t;

/// A finite, possibly empty, sequence of elements.
using Tuple = std::vector<ElementId>;

/// A finite set of equal-length tuples, iterated in lexicographic order.
using TupleSet = std::set<Tuple>;

/// A set of elements kept sorted and duplicate free.
class ElementSet {
 public:
  ElementSet() = default;
  ElementSet(std::initializer_list<ElementId> members);
  explicit ElementSet(std::vector<ElementId> members);

  static ElementSet range(std::size_t n);

  bool contains(ElementId x) const;
  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  bool is_subset_of(const ElementSet& other) const;

  /// Position of `x` inside the sorted member list.
  std::optional<std::size_t> position(ElementId x) const;

  void insert(ElementId x);
  ElementSet united(const ElementSet& other) const;
  ElementSet intersected(const ElementSet& other) const;
  ElementSet minus(const ElementSet& other) const;

  const std::vector<ElementId>& members() const noexcept { return members_; }
  Tuple as_tuple() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  friend auto operator<=>(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<ElementId> members_;
};

/// Entries of all tuples of `tuples` collected into one set.
ElementSet entries_of(const TupleSet& tuples);
ElementSet entries_of(const Tuple& tuple);

struct RelationDecl {
  std::string name;
  std::size_t arity = 1;

  friend bool operator==(const RelationDecl&, const RelationDecl&) = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<RelationDecl> relations);

  std::size_t size() const noexcept { return relations_.size(); }
  const RelationDecl& operator[](std::size_t i) const { return relations_[i]; }
  const std::vector<RelationDecl>& relations() const noexcept { return relations_; }
  std::optional<std::size_t> find(std::string_view name) const;

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.relations_ == b.relations_;
  }

 private:
  std::vector<RelationDecl> relations_;
};

struct LoadOptions {
  std::size_t max_universe = 16;
};

/// A finite relational structure. Immutable after construction.
class Structure {
 public:
  /// Validates everything: non-empty universe, unique names, tuple arities,
  /// entries in range. `tables[i]` belongs to `signature[i]`.
  Structure(std::string name, Signature signature, std::vector<std::string> element_names,
            std::vector<TupleSet> tables);

  const std::string& name() const noexcept { return name_; }
  const Signature& signature() const noexcept { return signature_; }
  std::size_t size() const noexcept { return element_names_.size(); }
  ElementSet universe() const { return ElementSet::range(size()); }

  const std::string& element_name(ElementId x) const;
  const std::vector<std::string>& element_names() const noexcept { return element_names_; }
  std::optional<ElementId> find_element(std::string_view name) const;
  /// Like find_element but throws InputError on unknown names.
  ElementId element(std::string_view name) const;

  const TupleSet& table(std::size_t relation) const { return tables_[relation]; }
  const TupleSet& table(std::string_view relation) const;

  /// Membership by relation index. `t` must have the relation's arity.
  bool holds(std::size_t relation, const Tuple& t) const;

  bool valid(ElementId x) const noexcept { return x < size(); }
  void check_elements(const Tuple& t) const;
  void check_elements(const ElementSet& s) const;

  friend bool operator==(const Structure& a, const Structure& b) {
    return a.name_ == b.name_ && a.signature_ == b.signature_ &&
           a.element_names_ == b.element_names_ && a.tables_ == b.tables_;
  }

 private:
  std::string name_;
  Signature signature_;
  std::vector<std::string> element_names_;
  std::unordered_map<std::string, ElementId> element_index_;
  std::vector<TupleSet> tables_;
  // Row-major bitmap over universe^arity when small enough, else empty.
  std::vector<std::vector<bool>> dense_;
};

/// Parses the structure DSL:
///   structure Name { universe = { x, y, ... }  rel R/2 = { (x,y), ... } ... }
Structure load_structure(std::string_view text, const LoadOptions& options = {});

/// Canonical DSL text; load_structure(to_dsl(m)) == m.
std::string to_dsl(const Structure& m);

/// Atomic satisfaction. Throws InputError on unknown relation or arity mismatch.
bool eval_relation(const Structure& m, std::string_view relation, const Tuple& t);

/// Element names of `t`, comma separated, wrapped in parentheses.
std::string format_tuple(const Structure& m, const Tuple& t);
std::string format_set(const Structure& m, const ElementSet& s);

}  // namespace mtg

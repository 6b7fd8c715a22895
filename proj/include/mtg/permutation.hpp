#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mtg/structure.hpp"

namespace mtg {

/// A bijection of {0, ..., degree-1}, stored as its image list.
class Permutation {
 public:
  Permutation() = default;
  /// Throws InputError unless `images` is a bijection of 0..size-1.
  explicit Permutation(std::vector<ElementId> images);

  static Permutation identity(std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  ElementId operator()(ElementId x) const { return images_[x]; }
  const std::vector<ElementId>& images() const noexcept { return images_; }

  Tuple apply(const Tuple& t) const;
  TupleSet apply(const TupleSet& s) const;
  ElementSet apply(const ElementSet& s) const;

  bool is_identity() const;
  bool fixes(ElementId x) const { return images_[x] == x; }
  Permutation inverse() const;

  /// Composition, right factor first: (p * q)(x) = p(q(x)).
  friend Permutation operator*(const Permutation& p, const Permutation& q);

  /// Disjoint cycle notation, e.g. "(0 1)(2 3)"; identity is "()".
  /// `labels`, if given, replaces each point by labels[point].
  std::string cycles(const std::vector<ElementId>* labels = nullptr) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<ElementId> images, Unchecked) : images_(std::move(images)) {}

  std::vector<ElementId> images_;
};

/// Reads cycle notation such as "(0 1 2)(3 4)" over `degree` points.
Permutation parse_cycles(std::string_view text, std::size_t degree);

}  // namespace mtg

#include "mtg/permutation.hpp"

#include <cctype>

#include "mtg/error.hpp"

namespace mtg {

Permutation::Permutation(std::vector<ElementId> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (ElementId y : images_) {
    if (y >= images_.size() || seen[y]) throw InputError("not a bijection");
    seen[y] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<ElementId> id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<ElementId>(i);
  return Permutation(std::move(id), Unchecked{});
}

Tuple Permutation::apply(const Tuple& t) const {
  Tuple out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = images_[t[i]];
  return out;
}

TupleSet Permutation::apply(const TupleSet& s) const {
  TupleSet out;
  for (const auto& t : s) out.insert(apply(t));
  return out;
}

ElementSet Permutation::apply(const ElementSet& s) const {
  std::vector<ElementId> out;
  out.reserve(s.size());
  for (ElementId x : s) out.push_back(images_[x]);
  return ElementSet(std::move(out));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<ElementId> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<ElementId>(i);
  return Permutation(std::move(inv), Unchecked{});
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw InputError("composing permutations of different degree");
  std::vector<ElementId> out(q.degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.images_[q.images_[i]];
  return Permutation(std::move(out), Permutation::Unchecked{});
}

std::string Permutation::cycles(const std::vector<ElementId>* labels) const {
  std::string s;
  std::vector<bool> done(images_.size(), false);
  auto label = [&](ElementId x) { return std::to_string(labels ? (*labels)[x] : x); };
  for (ElementId start = 0; start < images_.size(); ++start) {
    if (done[start] || images_[start] == start) continue;
    s += "(" + label(start);
    done[start] = true;
    for (ElementId x = images_[start]; x != start; x = images_[x]) {
      s += " " + label(x);
      done[x] = true;
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<ElementId> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<ElementId>(i);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw InputError("cycle notation: expected '('");
    ++i;
    std::vector<ElementId> cycle;
    while (true) {
      skip_space();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw InputError("cycle notation: expected point");
      auto x = static_cast<ElementId>(std::stoul(std::string(text.substr(i, j - i))));
      if (x >= degree || used[x]) throw InputError("cycle notation: bad or repeated point");
      used[x] = true;
      cycle.push_back(x);
      i = j;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    skip_space();
  }
  return Permutation(std::move(images));
}

}  // namespace mtg

#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

namespace oracle {

namespace {

bool maps_relations(const Structure& m, const Images& p) {
  for (std::size_t r = 0; r < m.signature().size(); ++r) {
    const TupleSet& table = m.table(r);
    for (const Tuple& t : table) {
      Tuple u(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) u[i] = p[t[i]];
      if (!table.count(u)) return false;
    }
  }
  return true;
}

Images compose(const Images& p, const Images& q) {
  Images r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

}  // namespace

std::vector<Images> brute_force_automorphisms(const Structure& m) {
  Images p(m.size());
  std::iota(p.begin(), p.end(), 0);
  std::vector<Images> out;
  do {
    if (maps_relations(m, p)) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::set<Images> naive_closure(std::size_t degree, const std::vector<Images>& gens) {
  Images id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<Images> seen{id};
  std::deque<Images> queue{id};
  while (!queue.empty()) {
    Images x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Images y = compose(g, x);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return seen;
}

std::vector<Images> fixing(const std::vector<Images>& group, const ElementSet& a) {
  std::vector<Images> out;
  for (const auto& g : group) {
    bool ok = true;
    for (ElementId x : a) ok = ok && g[x] == x;
    if (ok) out.push_back(g);
  }
  return out;
}

ElementSet fixed_points(const std::vector<Images>& group, std::size_t n) {
  ElementSet out;
  for (ElementId x = 0; x < n; ++x) {
    bool ok = true;
    for (const auto& g : group) ok = ok && g[x] == x;
    if (ok) out.insert(x);
  }
  return out;
}

TupleSet orbit(const std::vector<Images>& group, const Tuple& t) {
  TupleSet out;
  for (const auto& g : group) {
    Tuple u(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) u[i] = g[t[i]];
    out.insert(u);
  }
  return out;
}

ElementSet dcl(const std::vector<Images>& aut, const ElementSet& a, std::size_t n) {
  return fixed_points(fixing(aut, a), n);
}

std::set<std::set<Images>> all_subgroups(const std::vector<Images>& group) {
  std::set<std::set<Images>> out;
  const std::size_t n = group.empty() ? 0 : group[0].size();
  const std::size_t k = group.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      for (std::size_t l = j; l < k; ++l) {
        out.insert(naive_closure(n, {group[i], group[j], group[l]}));
      }
    }
  }
  return out;
}

bool naive_eval(const Structure& m, const Formula& f, std::map<std::string, ElementId> env) {
  using mtg::FormulaKind;
  auto value = [&](const std::string& id) {
    auto it = env.find(id);
    return it != env.end() ? it->second : m.element(id);
  };
  switch (f.kind) {
    case FormulaKind::Atom: {
      Tuple t;
      for (const auto& id : f.terms) t.push_back(value(id));
      return m.table(f.symbol).count(t) > 0;
    }
    case FormulaKind::Equal:
      return value(f.terms[0]) == value(f.terms[1]);
    case FormulaKind::Not:
      return !naive_eval(m, f.children[0], env);
    case FormulaKind::And:
      return naive_eval(m, f.children[0], env) && naive_eval(m, f.children[1], env);
    case FormulaKind::Or:
      return naive_eval(m, f.children[0], env) || naive_eval(m, f.children[1], env);
    case FormulaKind::Implies:
      return !naive_eval(m, f.children[0], env) || naive_eval(m, f.children[1], env);
    case FormulaKind::Iff:
      return naive_eval(m, f.children[0], env) == naive_eval(m, f.children[1], env);
    case FormulaKind::ForAll:
    case FormulaKind::Exists:
    case FormulaKind::ExistsExactly: {
      std::size_t hits = 0;
      for (ElementId x = 0; x < m.size(); ++x) {
        auto inner = env;
        inner[f.symbol] = x;
        if (naive_eval(m, f.children[0], inner)) ++hits;
      }
      if (f.kind == FormulaKind::ForAll) return hits == m.size();
      if (f.kind == FormulaKind::Exists) return hits > 0;
      return hits == f.count;
    }
  }
  return false;
}

std::string random_formula(std::mt19937_64& rng, const Structure& m,
                           const std::vector<std::string>& vars, int depth) {
  static const std::vector<std::string> bound_names{"u", "v", "s"};
  std::function<std::string(int, std::vector<std::string>)> gen;
  gen = [&](int d, std::vector<std::string> scope) -> std::string {
    auto pick = [&] {
      std::vector<std::string> pool = scope;
      pool.push_back(m.element_name(rng() % m.size()));
      return pool[rng() % pool.size()];
    };
    const int choice = d <= 0 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % 9);
    if (choice == 0) {
      const auto& rel = m.signature()[rng() % m.signature().size()];
      std::string s = rel.name + "(";
      for (std::size_t i = 0; i < rel.arity; ++i) s += (i ? "," : "") + pick();
      return s + ")";
    }
    if (choice == 1) return pick() + " = " + pick();
    if (choice == 2) return "~" + gen(d - 1, scope);
    if (choice <= 5) {
      static const char* ops[] = {" & ", " | ", " -> ", " <-> "};
      return "(" + gen(d - 1, scope) + ops[rng() % 4] + gen(d - 1, scope) + ")";
    }
    std::string var;
    for (const auto& b : bound_names) {
      if (std::find(scope.begin(), scope.end(), b) == scope.end()) {
        var = b;
        break;
      }
    }
    if (var.empty()) return "~" + gen(d - 1, scope);
    scope.push_back(var);
    std::string q = choice == 6 ? "A " : choice == 7 ? "E " : "E!" + std::to_string(rng() % 3) + " ";
    return "(" + q + var + ". " + gen(d - 1, scope) + ")";
  };
  return gen(depth, vars);
}

std::uint32_t gf_mul(std::uint32_t x, std::uint32_t y, unsigned bits, unsigned modulus) {
  std::uint32_t r = 0;
  while (y) {
    if (y & 1u) r ^= x;
    y >>= 1;
    x <<= 1;
    if (x & (1u << bits)) x ^= modulus;
  }
  return r;
}

std::uint32_t gf_value(const std::string& name, unsigned bits, unsigned modulus) {
  if (name == "0") return 0;
  if (name == "1") return 1;
  const unsigned k = name == "w" ? 1 : static_cast<unsigned>(std::stoul(name.substr(1)));
  std::uint32_t v = 1;
  for (unsigned i = 0; i < k; ++i) v = gf_mul(v, 2, bits, modulus);
  return v;
}

std::vector<Images> frobenius_group(const Structure& m, unsigned bits, unsigned modulus) {
  std::map<std::uint32_t, ElementId> by_value;
  for (ElementId x = 0; x < m.size(); ++x) by_value[gf_value(m.element_name(x), bits, modulus)] = x;
  std::vector<Images> out;
  for (unsigned k = 0; k < bits; ++k) {
    Images p(m.size());
    for (ElementId x = 0; x < m.size(); ++x) {
      std::uint32_t v = gf_value(m.element_name(x), bits, modulus);
      for (unsigned i = 0; i < k; ++i) v = gf_mul(v, v, bits, modulus);
      p[x] = by_value.at(v);
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace oracle

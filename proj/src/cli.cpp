#include "mtg/cli.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mtg/corpus.hpp"
#include "mtg/error.hpp"
#include "mtg/formula.hpp"
#include "mtg/galois.hpp"
#include "mtg/lemma_suite.hpp"
#include "mtg/report.hpp"

namespace mtg {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

struct Globals {
  std::string format = "text";
  std::size_t max_len = 3;
  std::uint64_t seed = 1;

  bool json() const { return format == "json"; }
};

class Session {
 public:
  Session(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  GaloisContext context(const std::string& source) const {
    GaloisOptions opts;
    opts.max_len = g_.max_len;
    return GaloisContext(resolve_structure(source), opts);
  }

  void emit(const Json& j, const std::string& text) const {
    if (g_.json()) {
      out_ << j.dump(2) << "\n";
    } else {
      out_ << text;
      if (!text.empty() && text.back() != '\n') out_ << "\n";
    }
  }

  const Globals& g_;
  std::ostream& out_;
};

Json tuple_set_json(const Structure& m, const TupleSet& s) {
  Json out = Json::array();
  for (const auto& t : s) out.push_back(tuple_json(m, t));
  return out;
}

std::string tuple_set_text(const Structure& m, const TupleSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& t : s) {
    out += (first ? "" : ",") + format_tuple(m, t);
    first = false;
  }
  return out + "}";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

Structure resolve_structure(const std::string& source) {
  constexpr std::string_view prefix = "corpus:";
  if (source.rfind(prefix, 0) == 0) return load_corpus(source.substr(prefix.size()));
  std::ifstream in(source);
  if (!in) throw InputError("cannot open structure file '" + source + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_structure(buf.str());
}

ElementSet parse_element_set(const Structure& m, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return {};
  if (t == "ALL") return m.universe();
  ElementSet s;
  for (const auto& part : split(t, ',')) s.insert(m.element(trim(part)));
  return s;
}

Tuple parse_tuple(const Structure& m, const std::string& text) {
  const std::string t = trim(text);
  Tuple out;
  if (t.empty()) return out;
  for (const auto& part : split(t, ',')) out.push_back(m.element(trim(part)));
  return out;
}

TupleSet parse_tuple_set(const Structure& m, const std::string& text) {
  TupleSet out;
  if (trim(text).empty()) return out;
  std::optional<std::size_t> arity;
  for (const auto& part : split(text, ';')) {
    Tuple t = parse_tuple(m, part);
    if (arity && *arity != t.size()) throw InputError("tuples in a set must have equal length");
    arity = t.size();
    out.insert(std::move(t));
  }
  return out;
}

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_command(args, out, err);
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Galois-theoretic workbench for finite relational structures", "mtg"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--max-len", g.max_len, "Longest tuple tried by bounded searches")
      ->check(CLI::Range(std::size_t{0}, std::size_t{16}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized checks")->capture_default_str();

  Session s(g, out);
  std::function<int()> action;
  std::string structure, formula, base, ext, top, set, tuple, sets, assign;
  std::size_t max_size = 3, instances = 200;

  auto sub = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->fallthrough();
    return c;
  };
  auto with_structure = [&](CLI::App* c) {
    c->add_option("structure", structure, "corpus:NAME or a structure file")->required();
    return c;
  };

  auto* parse = with_structure(sub("parse", "Load a structure and print it"));
  parse->callback([&] {
    action = [&] {
      const Structure m = resolve_structure(structure);
      Json rels = Json::array();
      for (std::size_t r = 0; r < m.signature().size(); ++r) {
        const auto& d = m.signature()[r];
        rels.push_back(Json{{"name", d.name}, {"arity", d.arity}, {"tuples", tuple_set_json(m, m.table(r))}});
      }
      Json j{{"name", m.name()}, {"elements", m.element_names()}, {"relations", rels}};
      s.emit(j, to_dsl(m));
      return kExitOk;
    };
  });

  auto* eval = with_structure(sub("eval", "Evaluate a formula or list its solutions"));
  eval->add_option("formula", formula, "Formula text")->required();
  eval->add_option("--assign", assign, "Variable bindings x=a,y=b");
  eval->callback([&] {
    action = [&] {
      const Structure m = resolve_structure(structure);
      const Formula f = parse_formula(formula, m.signature());
      Assignment env;
      if (!trim(assign).empty()) {
        for (const auto& part : split(assign, ',')) {
          const auto eq = part.find('=');
          if (eq == std::string::npos) throw InputError("binding '" + part + "' lacks '='");
          env[trim(part.substr(0, eq))] = m.element(trim(part.substr(eq + 1)));
        }
      }
      std::vector<std::string> vars;
      for (const auto& v : free_variables(f, m)) {
        if (!env.count(v)) vars.push_back(v);
      }
      Json j{{"formula", to_string(f)}};
      std::string text;
      if (vars.empty()) {
        const bool value = evaluate(m, f, env);
        j["value"] = value;
        text = value ? "true" : "false";
      } else {
        TupleSet sols;
        std::vector<std::string> all = vars;
        std::vector<std::string> bound;
        for (const auto& [k, v] : env) bound.push_back(k);
        all.insert(all.end(), bound.begin(), bound.end());
        for (const auto& t : solution_set(m, f, all)) {
          bool ok = true;
          for (std::size_t i = 0; i < bound.size(); ++i) {
            ok = ok && t[vars.size() + i] == env.at(bound[i]);
          }
          if (ok) sols.insert(Tuple(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(vars.size())));
        }
        j["variables"] = vars;
        j["solutions"] = tuple_set_json(m, sols);
        text = "(";
        for (std::size_t i = 0; i < vars.size(); ++i) text += (i ? "," : "") + vars[i];
        text += ") in " + tuple_set_text(m, sols) + "\n" + std::to_string(sols.size()) + " solutions";
      }
      s.emit(j, text);
      return kExitOk;
    };
  });

  auto* aut = with_structure(sub("aut", "Automorphism group"));
  aut->callback([&] {
    action = [&] {
      const GaloisContext ctx = s.context(structure);
      const auto& m = ctx.structure();
      const auto& grp = ctx.automorphisms();
      Json j = group_json(m, grp);
      Json orbits = Json::array();
      for (const auto& o : point_orbits(grp)) orbits.push_back(set_json(m, o));
      j["orbits"] = orbits;
      std::string text = "order: " + std::to_string(grp.order()) + "\ngenerators:\n";
      for (const auto& p : grp.generators()) text += "  " + named_cycles(m, p) + "\n";
      text += "orbits:";
      for (const auto& o : point_orbits(grp)) text += " " + format_set(m, o);
      s.emit(j, text);
      return kExitOk;
    };
  });

  auto closure_cmd = [&](const std::string& name, const std::string& help, bool algebraic) {
    auto* c = with_structure(sub(name, help));
    c->add_option("--set", set, "Parameter set A")->required();
    c->callback([&, algebraic] {
      action = [&, algebraic] {
        const GaloisContext ctx = s.context(structure);
        const auto& m = ctx.structure();
        const ElementSet a = parse_element_set(m, set);
        const ElementSet r = algebraic ? ctx.acl(a) : ctx.dcl(a);
        s.emit(Json{{"set", set_json(m, a)}, {"closure", set_json(m, r)}}, format_set(m, r));
        return kExitOk;
      };
    });
  };
  closure_cmd("dcl", "Definable closure", false);
  closure_cmd("acl", "Algebraic closure", true);

  auto* orb = with_structure(sub("orbit", "Orbit of a tuple over a set"));
  orb->add_option("--tuple", tuple, "Tuple b")->required();
  orb->add_option("--base", base, "Parameter set A")->required();
  orb->callback([&] {
    action = [&] {
      const GaloisContext ctx = s.context(structure);
      const auto& m = ctx.structure();
      const auto o = ctx.orbit_over(parse_tuple(m, tuple), parse_element_set(m, base));
      Json j{{"tuple", tuple_json(m, o.base)},
             {"base", set_json(m, o.params)},
             {"degree", o.degree},
             {"orbit", tuple_set_json(m, o.orbit)}};
      s.emit(j, "degree " + std::to_string(o.degree) + ": " + tuple_set_text(m, o.orbit));
      return kExitOk;
    };
  });

  auto extension_cmd = [&](const std::string& name, const std::string& help,
                           std::function<int(const GaloisContext&, const ElementSet&, const ElementSet&)> run) {
    auto* c = with_structure(sub(name, help));
    c->add_option("--base", base, "Base set A")->required();
    c->add_option("--ext", ext, "Extension B containing A")->required();
    c->callback([&, run] {
      action = [&, run] {
        const GaloisContext ctx = s.context(structure);
        const auto& m = ctx.structure();
        return run(ctx, parse_element_set(m, base), parse_element_set(m, ext));
      };
    });
  };
  extension_cmd("degree", "Degree of a finite extension",
                [&](const GaloisContext& ctx, const ElementSet& a, const ElementSet& b) {
                  const auto& m = ctx.structure();
                  const auto gen = ctx.find_generator(a, b);
                  if (!gen) {
                    throw Inconclusive("no generator of length <= " + std::to_string(g.max_len));
                  }
                  const std::size_t d = ctx.degree_of_extension(a, b);
                  s.emit(Json{{"degree", d}, {"generator", tuple_json(m, *gen)}},
                         "degree " + std::to_string(d) + " (generator " + format_tuple(m, *gen) + ")");
                  return kExitOk;
                });
  extension_cmd("normal", "Whether B is a normal extension of A",
                [&](const GaloisContext& ctx, const ElementSet& a, const ElementSet& b) {
                  const bool r = ctx.is_normal_extension(a, b);
                  s.emit(Json{{"normal", r}}, "normal: " + yes_no(r));
                  return kExitOk;
                });
  extension_cmd("splitting", "Whether B is a splitting extension of A",
                [&](const GaloisContext& ctx, const ElementSet& a, const ElementSet& b) {
                  const auto& m = ctx.structure();
                  const auto r = ctx.is_splitting_extension(a, b);
                  Json j{{"splitting", r.splitting},
                         {"witness", r.witness ? tuple_json(m, *r.witness) : Json(nullptr)}};
                  std::string text = "splitting: " + yes_no(r.splitting);
                  if (r.witness) text += " (orbit of " + format_tuple(m, *r.witness) + ")";
                  s.emit(j, text);
                  return kExitOk;
                });

  auto* irr = with_structure(sub("irr-check", "Whether a formula isolates the orbit of b over A"));
  irr->add_option("formula", formula, "Formula text")->required();
  irr->add_option("--tuple", tuple, "Tuple b")->required();
  irr->add_option("--base", base, "Parameter set A")->required();
  irr->callback([&] {
    action = [&] {
      const GaloisContext ctx = s.context(structure);
      const auto& m = ctx.structure();
      const Formula f = parse_formula(formula, m.signature());
      const bool r = ctx.is_irreducible_formula(f, parse_tuple(m, tuple), parse_element_set(m, base));
      s.emit(Json{{"formula", to_string(f)}, {"irreducible", r}}, "irreducible: " + yes_no(r));
      return r ? kExitOk : kExitFail;
    };
  });

  auto* code = with_structure(sub("code", "Search for a code of a finite set of tuples"));
  code->add_option("--set", set, "Tuples separated by ';', entries by ','")->required();
  code->callback([&] {
    action = [&] {
      const GaloisContext ctx = s.context(structure);
      const auto& m = ctx.structure();
      const auto r = ctx.find_code(parse_tuple_set(m, set));
      Json j{{"code", r.code ? tuple_json(m, *r.code) : Json(nullptr)},
             {"certified_absent", r.certified_absent},
             {"stabilizer_order", r.setwise.order()}};
      std::string text;
      if (r.code) {
        text = "code: " + format_tuple(m, *r.code);
      } else {
        text = "no code up to length " + std::to_string(g.max_len);
        if (r.certified_absent) text += "; no code of any length exists";
      }
      s.emit(j, text);
      return kExitOk;
    };
  });

  auto* codes = with_structure(sub("codes-report", "Check coding of all small finite sets"));
  codes->add_option("--max-size", max_size, "Largest set size")->capture_default_str();
  codes->callback([&] {
    action = [&] {
      const GaloisContext ctx = s.context(structure);
      const auto r = ctx.codes_finite_sets(max_size);
      s.emit(to_json(ctx.structure(), r), to_text(ctx.structure(), r));
      return r.codes() ? kExitOk : kExitFail;
    };
  });

  auto* msym = with_structure(sub("msym-code", "Multi-symmetric code of a set in a field structure"));
  msym->add_option("--set", set, "Tuples separated by ';', entries by ','")->required();
  msym->callback([&] {
    action = [&] {
      const GaloisContext ctx = s.context(structure);
      const auto& m = ctx.structure();
      const Tuple c = ctx.multisymmetric_code(parse_tuple_set(m, set));
      s.emit(Json{{"code", tuple_json(m, c)}}, "code: " + format_tuple(m, c));
      return kExitOk;
    };
  });

  auto* galois = with_structure(sub("galois", "Verify the Galois duality between A and C"));
  galois->add_option("--base", base, "Base set A")->required();
  galois->add_option("--top", top, "Top set C")->required();
  galois->callback([&] {
    action = [&] {
      const GaloisContext ctx = s.context(structure);
      const auto& m = ctx.structure();
      const auto r = ctx.verify_galois_correspondence(parse_element_set(m, base), parse_element_set(m, top));
      s.emit(to_json(m, r), to_text(m, r));
      return r.passed() ? kExitOk : kExitFail;
    };
  });

  auto* tower = with_structure(sub("tower", "Verify the tower laws for A <= B <= C"));
  tower->add_option("--sets", sets, "A;B;C")->required();
  tower->callback([&] {
    action = [&] {
      const GaloisContext ctx = s.context(structure);
      const auto& m = ctx.structure();
      const auto parts = split(sets, ';');
      if (parts.size() != 3) throw InputError("--sets needs exactly three ';'-separated sets");
      const auto r = ctx.verify_tower(parse_element_set(m, parts[0]), parse_element_set(m, parts[1]),
                                      parse_element_set(m, parts[2]));
      s.emit(to_json(m, r), to_text(m, r));
      return r.passed() ? kExitOk : kExitFail;
    };
  });

  auto* verify = with_structure(sub("verify", "Run the randomized property suite"));
  verify->add_option("--instances", instances, "Random instances per property")->capture_default_str();
  verify->callback([&] {
    action = [&] {
      const GaloisContext ctx = s.context(structure);
      PropertyOptions opts;
      opts.instances = instances;
      opts.seed = g.seed;
      const auto r = run_property_suite(ctx, opts);
      s.emit(to_json(ctx.structure(), r), to_text(ctx.structure(), r));
      return r.passed() ? kExitOk : kExitFail;
    };
  });

  auto* corpus_cmd = sub("corpus", "Built-in structures");
  corpus_cmd->require_subcommand(1);
  auto* list = corpus_cmd->add_subcommand("list", "List built-in structures");
  list->fallthrough();
  list->callback([&] {
    action = [&] {
      Json j = Json::array();
      std::string text;
      for (const auto& e : corpus()) {
        const Structure m = load_structure(e.source);
        j.push_back(Json{{"name", e.name}, {"elements", m.size()}, {"notes", e.notes}});
        text += e.name + " (" + std::to_string(m.size()) + " elements): " + e.notes + "\n";
      }
      s.emit(j, text);
      return kExitOk;
    };
  });

  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--format" || a == "--max-len" || a == "--seed") {
      ++i;
      continue;
    }
    if (a.rfind("-", 0) == 0) continue;
    if (app.get_subcommand_no_throw(a) == nullptr) {
      err << "mtg: unknown command '" << a << "'\n";
      return kExitUsage;
    }
    break;
  }

  std::vector<const char*> argv{"mtg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mtg: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!action) {
    err << "mtg: no command\n";
    return kExitUsage;
  }
  try {
    return action();
  } catch (const ParseError& e) {
    err << "mtg: parse error at " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "mtg: " << e.what() << "\n";
    return kExitUsage;
  } catch (const HypothesisError& e) {
    err << "mtg: hypothesis not met: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapExceeded& e) {
    err << "mtg: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Inconclusive& e) {
    err << "mtg: inconclusive: " << e.what() << "\n";
    return kExitFail;
  } catch (const Error& e) {
    err << "mtg: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace mtg

#include "doctest.h"
#include "mtg/corpus.hpp"
#include "mtg/error.hpp"
#include "mtg/structure.hpp"
#include "oracles.hpp"

using namespace mtg;

TEST_CASE("EX_RS loads with two symmetric relations") {
  const Structure m = load_corpus("EX_RS");
  CHECK(m.size() == 6);
  CHECK(m.table("R").size() == 4);
  CHECK(m.table("S").size() == 4);
  CHECK(m.element_name(0) == "a");
  CHECK(m.element("f") == 5);
}

TEST_CASE("smallest structure") {
  const Structure m = load_structure("structure T { universe = { p } }");
  CHECK(m.name() == "T");
  CHECK(m.size() == 1);
  CHECK(m.signature().size() == 0);
}

TEST_CASE("field tables agree with carry-less arithmetic") {
  for (auto [name, bits, modulus] : {std::tuple{"GF4", 2u, 0b111u}, std::tuple{"GF16", 4u, 0b10011u}}) {
    const Structure m = load_corpus(name);
    const std::size_t q = std::size_t{1} << bits;
    REQUIRE(m.size() == q);
    CHECK(m.table("add").size() == q * q);
    CHECK(m.table("mul").size() == q * q);
    for (ElementId x = 0; x < q; ++x) {
      for (ElementId y = 0; y < q; ++y) {
        const auto vx = oracle::gf_value(m.element_name(x), bits, modulus);
        const auto vy = oracle::gf_value(m.element_name(y), bits, modulus);
        ElementId sum = 0, prod = 0;
        for (ElementId z = 0; z < q; ++z) {
          const auto vz = oracle::gf_value(m.element_name(z), bits, modulus);
          if (vz == (vx ^ vy)) sum = z;
          if (vz == oracle::gf_mul(vx, vy, bits, modulus)) prod = z;
        }
        CHECK(m.holds(*m.signature().find("add"), {x, y, sum}));
        CHECK(m.holds(*m.signature().find("mul"), {x, y, prod}));
      }
    }
  }
}

TEST_CASE("eval_relation") {
  const Structure m = load_corpus("EX_RS");
  CHECK(eval_relation(m, "R", {0, 1}));
  CHECK_FALSE(eval_relation(m, "R", {0, 2}));
  CHECK_FALSE(eval_relation(m, "S", {0, 0}));
  CHECK_THROWS_AS(eval_relation(m, "Q", {0, 1}), InputError);
  CHECK_THROWS_AS(eval_relation(m, "R", {0}), InputError);
}

TEST_CASE("eval_relation agrees with every table") {
  for (const auto& e : corpus()) {
    const Structure m = load_structure(e.source);
    for (const auto& d : m.signature().relations()) {
      std::size_t hits = 0;
      Tuple t(d.arity, 0);
      while (true) {
        const bool in = m.table(d.name).count(t) > 0;
        CHECK(eval_relation(m, d.name, t) == in);
        hits += in;
        std::size_t i = 0;
        while (i < t.size() && ++t[i] == m.size()) t[i++] = 0;
        if (i == t.size()) break;
      }
      CHECK(hits == m.table(d.name).size());
    }
  }
}

TEST_CASE("round trip through the DSL") {
  for (const auto& e : corpus()) {
    const Structure m = load_structure(e.source);
    CHECK(load_structure(to_dsl(m)) == m);
  }
}

TEST_CASE("comments and whitespace") {
  const Structure m = load_structure(
      "# header\nstructure X{universe={a,b}#tail\n rel P/1={(a)} rel Q/2 = { } }");
  CHECK(m.size() == 2);
  CHECK(m.table("P").size() == 1);
  CHECK(m.table("Q").empty());
}

TEST_CASE("load errors") {
  auto parse_error_at = [](const char* text, std::size_t line, std::size_t col) {
    try {
      load_structure(text);
      FAIL("expected ParseError for " << text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == col);
    }
  };
  parse_error_at("structure T { universe = { p }", 1, 31);
  parse_error_at("structure T {\n  universe = { p, }\n}", 2, 19);
  CHECK_THROWS_AS(load_structure("structure T { universe = { p, p } }"), ParseError);
  CHECK_THROWS_AS(load_structure("structure T { universe = { p } rel R/1 = { (q) } }"), ParseError);
  CHECK_THROWS_AS(load_structure("structure T { universe = { p } rel R/2 = { (p) } }"), ParseError);
  CHECK_THROWS_AS(load_structure("structure T { universe = { p } rel R/1 = {} rel R/2 = {} }"),
                  ParseError);
  std::string big = "structure B { universe = { ";
  for (int i = 0; i < 17; ++i) big += (i ? ", e" : "e") + std::to_string(i);
  big += " } }";
  CHECK_THROWS_AS(load_structure(big), CapExceeded);
  LoadOptions wide;
  wide.max_universe = 32;
  CHECK(load_structure(big, wide).size() == 17);
}

TEST_CASE("ElementSet operations") {
  const ElementSet a{3, 1, 1, 2};
  CHECK(a.members() == std::vector<ElementId>{1, 2, 3});
  const ElementSet b{2, 5};
  CHECK(a.united(b) == ElementSet{1, 2, 3, 5});
  CHECK(a.intersected(b) == ElementSet{2});
  CHECK(a.minus(b) == ElementSet{1, 3});
  CHECK(ElementSet{2}.is_subset_of(a));
  CHECK_FALSE(b.is_subset_of(a));
  CHECK(a.position(3) == 2);
  CHECK_FALSE(a.position(0).has_value());
  CHECK(entries_of(TupleSet{{4, 0}, {0, 2}}) == ElementSet{0, 2, 4});
}

TEST_CASE("formatting") {
  const Structure m = load_corpus("EX_RS");
  CHECK(format_tuple(m, {0, 3}) == "(a,d)");
  CHECK(format_set(m, ElementSet{}) == "{}");
  CHECK(format_set(m, ElementSet{4, 1}) == "{b,e}");
}

TEST_CASE("corpus lookup") {
  CHECK(corpus().size() == 5);
  CHECK_THROWS_AS(load_corpus("NOPE"), InputError);
}

#include <doctest.h>

#include "coxlog/coxeter.hpp"
#include "coxlog/textio.hpp"

using namespace coxlog;

namespace {

MultiPoly P(const VarsPtr& vars, const std::string& s) { return parse_poly(vars, s); }

}  // namespace

TEST_CASE("catalog counts and exponents") {
  struct Row {
    const char* type;
    int rank, planes, orbits, hcox;
  };
  const Row rows[] = {
      {"A1", 1, 1, 1, 2},     {"A2", 2, 3, 1, 3},     {"A3", 3, 6, 1, 4},
      {"A4", 4, 10, 1, 5},    {"B2", 2, 4, 2, 4},     {"B3", 3, 9, 2, 6},
      {"D4", 4, 12, 1, 6},    {"I2(3)", 2, 3, 1, 3},  {"I2(4)", 2, 4, 2, 4},
      {"I2(5)", 2, 5, 1, 5},  {"I2(6)", 2, 6, 2, 6},  {"H3", 3, 15, 1, 10},
  };
  for (const auto& r : rows) {
    CAPTURE(r.type);
    CoxeterDatum d = build_irreducible(r.type);
    CHECK(d.type_string == r.type);
    CHECK(d.rank() == r.rank);
    CHECK(d.num_hyperplanes() == r.planes);
    CHECK(d.orbit_count() == r.orbits);
    REQUIRE(d.factors.size() == 1);
    CHECK(d.factors[0].coxeter_number == r.hcox);
    CHECK(d.q_poly.degree() == r.planes);
    CHECK(d.q_poly.is_homogeneous());
    // rank * coxeter_number = 2 * #hyperplanes for one orbit of reflections
    int esum = 0;
    for (int e : d.factors[0].exponents) esum += e;
    CHECK(esum == r.planes);
  }
  CHECK(catalog_types().size() == 12);
}

TEST_CASE("invariants are invariant and degrees match exponents") {
  for (const auto& t : catalog_types()) {
    CAPTURE(t);
    CoxeterDatum d = build_irreducible(t);
    auto gens = d.generators();
    auto inv = d.all_invariants();
    REQUIRE(static_cast<int>(inv.size()) == d.rank());
    for (size_t j = 0; j < inv.size(); ++j) {
      CHECK(inv[j].is_homogeneous());
      CHECK(inv[j].degree() == d.factors[0].exponents[j] + 1);
      for (const auto& g : gens) CHECK(g(inv[j]) == inv[j]);
    }
    // every root stays in the arrangement under every generator
    for (const auto& g : gens)
      for (const auto& h : d.hyperplanes) {
        LinearForm img = g(h.form).normalized();
        bool found = false;
        for (const auto& h2 : d.hyperplanes) found = found || h2.form == img;
        CHECK(found);
      }
  }
}

TEST_CASE("pinned small types") {
  SUBCASE("A1") {
    CoxeterDatum d = build_irreducible("A1");
    CHECK(d.q_poly == P(d.vars, "x"));
    CHECK(d.factors[0].invariants[0] == P(d.vars, "1/2*x^2"));
    CHECK(d.orbit_names == std::vector<std::string>{"o1"});
  }
  SUBCASE("A2") {
    CoxeterDatum d = build_irreducible("A2");
    CHECK(d.factors[0].invariants[0] == P(d.vars, "2/3*(x^2 + x*y + y^2)"));
    CHECK(d.factors[0].invariants[1] ==
          P(d.vars, "(2*x^3 + 3*x^2*y - 3*x*y^2 - 2*y^3)/9"));
    // Q = x*y*(x+y) up to the normalized-form convention
    auto ratio = d.q_poly.divide_exact(P(d.vars, "x*y*(x+y)"));
    REQUIRE(ratio.has_value());
    CHECK(ratio->is_constant());
  }
  SUBCASE("B2") {
    CoxeterDatum d = build_irreducible("B2");
    CHECK(d.factors[0].invariants[0] == P(d.vars, "1/2*x^2 + 1/2*y^2"));
    CHECK(d.factors[0].invariants[1] == P(d.vars, "1/4*x^2*y^2"));
    auto ratio = d.q_poly.divide_exact(P(d.vars, "x^3*y - x*y^3"));
    REQUIRE(ratio.has_value());
    CHECK(ratio->is_constant());
    CHECK(d.orbit_names == std::vector<std::string>{"long", "short"});
    // the two orbits: {x-y, x+y} and {x, y}
    auto orbits = d.orbit_decomposition();
    REQUIRE(orbits.size() == 2);
    CHECK(orbits[0].size() == 2);
    CHECK(orbits[1].size() == 2);
  }
  SUBCASE("B3 orbit names") {
    CoxeterDatum d = build_irreducible("B3");
    CHECK(d.orbit_names == std::vector<std::string>{"long", "short"});
    auto orbits = d.orbit_decomposition();
    CHECK(orbits[0].size() == 6);
    CHECK(orbits[1].size() == 3);
  }
  SUBCASE("I2(6) has two orbits of three mirrors") {
    CoxeterDatum d = build_irreducible("I2(6)");
    CHECK(d.orbit_names == std::vector<std::string>{"short", "long"});
    auto orbits = d.orbit_decomposition();
    CHECK(orbits[0].size() == 3);
    CHECK(orbits[1].size() == 3);
  }
  SUBCASE("D4 product invariant") {
    CoxeterDatum d = build_irreducible("D4");
    CHECK(d.factors[0].invariants[2] == P(d.vars, "x*y*z*w"));
    CHECK(d.factors[0].exponents == std::vector<int>{1, 3, 3, 5});
  }
}

TEST_CASE("I2(5) degree-5 invariant") {
  CoxeterDatum d = build_irreducible("I2(5)");
  CHECK(d.discriminant == 5);
  const MultiPoly& p2 = d.factors[0].invariants[1];
  CHECK(p2.degree() == 5);
  CHECK(p2.leading_coeff() == QuadScalar(1));
  // P1 recovers the invariant quadratic of the pairing
  const MultiPoly& p1 = d.factors[0].invariants[0];
  CHECK(p1.degree() == 2);
  for (const auto& g : d.generators()) CHECK(g(p2) == p2);
}

TEST_CASE("H3 structure") {
  CoxeterDatum d = build_irreducible("H3");
  CHECK(d.discriminant == 5);
  CHECK(d.num_hyperplanes() == 15);
  CHECK(d.orbit_count() == 1);
  const auto& inv = d.factors[0].invariants;
  CHECK(inv[0] == P(d.vars, "(x^2 + y^2 + z^2)/2"));
  CHECK(inv[1].degree() == 6);
  CHECK(inv[2].degree() == 10);
  // all roots have unit length
  for (const auto& h : d.hyperplanes)
    CHECK(d.metric.pair_forms(h.root, h.root) == QuadScalar(1));
}

TEST_CASE("products") {
  SUBCASE("single factor unchanged") {
    CoxeterDatum a = build_irreducible("B2");
    CoxeterDatum p = product({a});
    CHECK(p.type_string == "B2");
    CHECK((*p.vars)[0] == "x");
  }
  SUBCASE("A1 x A1") {
    CoxeterDatum d = build_type("A1xA1");
    CHECK(d.type_string == "A1xA1");
    CHECK(d.rank() == 2);
    CHECK(d.num_hyperplanes() == 2);
    CHECK(d.orbit_count() == 2);
    CHECK(d.orbit_names == std::vector<std::string>{"f1.o1", "f2.o1"});
    CHECK((*d.vars)[0] == "x1");
    CHECK((*d.vars)[1] == "x2");
    CHECK(d.q_poly == P(d.vars, "x1*x2"));
    REQUIRE(d.factors.size() == 2);
    CHECK(d.factors[0].invariants[0] == P(d.vars, "1/2*x1^2"));
    CHECK(d.factors[1].invariants[0] == P(d.vars, "1/2*x2^2"));
    CHECK(d.hyperplanes[0].factor == 0);
    CHECK(d.hyperplanes[1].factor == 1);
  }
  SUBCASE("A1 x B2 bookkeeping") {
    CoxeterDatum d = build_type("a1 x b2");
    CHECK(d.type_string == "A1xB2");
    CHECK(d.rank() == 3);
    CHECK(d.num_hyperplanes() == 5);
    CHECK(d.orbit_names ==
          std::vector<std::string>{"f1.o1", "f2.long", "f2.short"});
    // invariants of the B2 factor use the embedded variables x2, y2
    CHECK(d.factors[1].invariants[0] == P(d.vars, "1/2*x2^2 + 1/2*y2^2"));
    // generators of the product fix every factor's invariants
    auto gens = d.generators();
    for (const auto& g : gens)
      for (const auto& p : d.all_invariants()) CHECK(g(p) == p);
  }
  SUBCASE("field clash rejected") {
    CHECK_THROWS_AS(build_type("I2(5)xI2(6)"), error);
  }
  SUBCASE("compatible fields merge") {
    CoxeterDatum d = build_type("I2(5)xA1");
    CHECK(d.discriminant == 5);
  }
  SUBCASE("grammar errors") {
    CHECK_THROWS_AS(build_type(""), error);
    CHECK_THROWS_AS(build_type("E8"), error);
    CHECK_THROWS_AS(build_type("A1x"), error);
    CHECK_THROWS_AS(build_type("I2(7)"), error);
  }
}

TEST_CASE("multiplicity maps") {
  CoxeterDatum d = build_irreducible("B2");
  SUBCASE("const") {
    auto m = MultiplicityMap::constant(d, 1);
    CHECK(m.values() == std::vector<int>{1, 1, 1, 1});
    CHECK(m.is_constant());
    CHECK(m.is_orbit_constant(d));
    CHECK(m.description() == "const:1");
    CHECK(MultiplicityMap::parse(d, "const:-3").values() ==
          std::vector<int>{-3, -3, -3, -3});
  }
  SUBCASE("orbit") {
    auto m = MultiplicityMap::parse(d, "orbit:long=2,short=-1");
    // hyperplane order: x-y, y, x+y, x (discovery order); orbits long={0,2}
    for (int h = 0; h < 4; ++h) {
      int expect = d.orbit_names[static_cast<size_t>(d.hyperplanes[static_cast<size_t>(h)].orbit)] == "long" ? 2 : -1;
      CHECK(m[h] == expect);
    }
    CHECK(!m.is_constant());
    CHECK(m.is_orbit_constant(d));
    CHECK_THROWS_AS(MultiplicityMap::parse(d, "orbit:long=2"), error);
    CHECK_THROWS_AS(MultiplicityMap::parse(d, "orbit:long=2,short=1,tall=0"), error);
  }
  SUBCASE("list") {
    auto m = MultiplicityMap::parse(d, "list:1,0,-1,2");
    CHECK(m.values() == std::vector<int>{1, 0, -1, 2});
    CHECK(!m.is_orbit_constant(d));
    CHECK(m.description() == "list:1,0,-1,2");
    CHECK_THROWS_AS(MultiplicityMap::parse(d, "list:1,2"), error);
    CHECK_THROWS_AS(MultiplicityMap::parse(d, "list:1,2,a,4"), error);
  }
  SUBCASE("shift and negate") {
    auto m = MultiplicityMap::parse(d, "orbit:long=1,short=3");
    auto s = m.shifted(2);
    for (int h = 0; h < 4; ++h) CHECK(s[h] == m[h] + 2);
    auto n = m.negated();
    for (int h = 0; h < 4; ++h) CHECK(n[h] == -m[h]);
    CHECK(MultiplicityMap::constant(d, 0).shifted(1).description() == "const:1");
  }
  SUBCASE("bad specs") {
    CHECK_THROWS_AS(MultiplicityMap::parse(d, "const"), error);
    CHECK_THROWS_AS(MultiplicityMap::parse(d, "const:x"), error);
    CHECK_THROWS_AS(MultiplicityMap::parse(d, "weights:1,2,3,4"), error);
  }
}

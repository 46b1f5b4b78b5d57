#include <algorithm>
#include <array>

#include "doctest.h"
#include "fibresum/fourman.hpp"

using namespace fibresum;
using namespace fibresum::fourman;
using intlat::IntVector;

namespace {

// Coordinates x, y, z, t of R^4.  A basis class is the 2-torus spanned by an
// ordered coordinate pair; two such tori meet in sign(i, j, k, l) points when
// the pairs are disjoint, never otherwise.
int wedge_sign(std::array<int, 4> p) {
  int inv = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (p[a] == p[b]) return 0;
      else if (p[a] > p[b]) ++inv;
  return inv % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("T4 pairing matches the wedge-product oracle") {
  enum { x, y, z, t };
  // T_x, T_y, T_z, U_x, U_y, U_z
  const std::array<std::array<int, 2>, 6> planes{{{x, t}, {y, t}, {z, t}, {y, z}, {z, x}, {x, y}}};
  const auto t4 = build_t4();
  REQUIRE(t4.manifold.rank() == 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const int expected = wedge_sign({planes[i][0], planes[i][1], planes[j][0], planes[j][1]});
      CHECK(*t4.manifold.pairing.entry(i, j) == expected);
    }
}

TEST_CASE("T4 record") {
  const auto t4 = build_t4();
  const auto& m = t4.manifold;
  CHECK(m.euler == 0);
  CHECK(m.signature == 0);
  CHECK(*m.b1 == 4);
  CHECK(*m.b2 == 6);
  CHECK(m.c1 == IntVector(6));
  CHECK_FALSE(m.simply_connected);
  CHECK(m.pi1_normally_generated_by_tori);

  REQUIRE(t4.find_torus("T_w"));
  CHECK(t4.find_torus("T_w")->klass == IntVector{1, 1, 1, 0, 0, 0});
  CHECK(t4.find_torus("T_x")->kind == TorusKind::symplectic);
  CHECK(t4.find_torus("T_y")->kind == TorusKind::lagrangian);
  CHECK(t4.find_torus("T_z")->kind == TorusKind::lagrangian);
  CHECK(t4.find_torus("T_w")->kind == TorusKind::symplectic);
  CHECK(t4.find_torus("T_q") == nullptr);

  for (const auto& torus : t4.tori) {
    CHECK(*m.pairing.pair(torus.klass, torus.klass) == 0);
    CHECK(*m.pairing.pair(torus.klass, *torus.dual) == 1);
  }
  const auto v = validate(m, t4.tori);
  CHECK(v.ok());
  CHECK(v.skipped.empty());
}

TEST_CASE("E(1) invariants agree with CP2 # 9 (-CP2)") {
  // Blow-up additivity: e and b2 gain 1, sigma loses 1 per exceptional sphere.
  const long blowups = 9;
  const long e = 3 + blowups, sigma = 1 - blowups, b2 = 1 + blowups;
  const auto e1 = build_e1();
  CHECK(e1.manifold.euler == e);
  CHECK(e1.manifold.signature == sigma);
  CHECK(*e1.manifold.b2 == b2);
  CHECK(*e1.manifold.b1 == 0);
  CHECK(e1.manifold.simply_connected);
  CHECK(e1.fibre_complement_simply_connected);

  const auto& c1 = e1.manifold.c1;
  CHECK(*e1.manifold.pairing.pair(c1, c1) == 2 * e + 3 * sigma);
  CHECK(*e1.manifold.pairing.pair(e1.fibre.klass, e1.fibre.klass) == 0);
  CHECK(*e1.manifold.pairing.pair(c1, e1.fibre.klass) == 0);
  // c1 is Poincare dual to the fibre, so it pairs to 1 with the section.
  CHECK(*e1.manifold.pairing.pair(c1, *e1.fibre.dual) == 1);
  CHECK(validate(e1.manifold, std::vector<EmbeddedTorus>{e1.fibre}).ok());
}

TEST_CASE("E(1) Chern class for either orientation") {
  CHECK(e1_c1(1) == IntVector{1, 0});
  CHECK(e1_c1(-1) == IntVector{-1, 0});
  CHECK_THROWS_AS(e1_c1(0), std::invalid_argument);
}

TEST_CASE("torus kind names") {
  for (auto k : {TorusKind::symplectic, TorusKind::lagrangian}) CHECK(torus_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(torus_kind_from_string("complex"), std::invalid_argument);
}

TEST_CASE("validate reports violations") {
  auto t4 = build_t4();

  SUBCASE("not square-zero") {
    t4.tori.push_back({"bad", IntVector{1, 0, 0, 1, 0, 0}, TorusKind::symplectic, std::nullopt, false});
    const auto v = validate(t4.manifold, t4.tori);
    REQUIRE(v.violations.size() == 1);
    CHECK(v.violations[0].find("not square-zero") != std::string::npos);
  }
  SUBCASE("dual pairs wrongly") {
    t4.tori[0].dual = IntVector{0, 0, 0, 2, 0, 0};
    CHECK(validate(t4.manifold, t4.tori).violations.at(0).find("dual pairs to 2") != std::string::npos);
  }
  SUBCASE("adjunction") {
    t4.manifold.c1 = IntVector{0, 0, 0, 1, 0, 0};
    const auto v = validate(t4.manifold, t4.tori);
    CHECK(std::any_of(v.violations.begin(), v.violations.end(),
                      [](const std::string& s) { return s.find("adjunction fails") != std::string::npos; }));
  }
  SUBCASE("inconsistent Betti data") {
    t4.manifold.simply_connected = true;
    CHECK_FALSE(validate(t4.manifold, t4.tori).ok());
  }
  SUBCASE("undeclared generator torus") {
    t4.manifold.pi1_generator_tori.push_back("T_q");
    CHECK_FALSE(validate(t4.manifold, t4.tori).ok());
  }
  SUBCASE("undeclared pairing is skipped, not violated") {
    t4.manifold.pairing.set_unknown(0, 3);
    const auto v = validate(t4.manifold, t4.tori);
    CHECK(v.ok());
    CHECK_FALSE(v.skipped.empty());
  }
}

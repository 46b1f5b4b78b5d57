#include <algorithm>
#include <random>

#include "doctest.h"
#include "fibresum/gompfsum.hpp"

using namespace fibresum;
using namespace fibresum::gompfsum;
using fourman::TorusKind;
using intlat::IntVector;

namespace {

SumRecipe t4_recipe(std::size_t w_copies) {
  auto t4 = fourman::build_t4();
  SumRecipe r;
  r.name = "t4";
  r.base = t4.manifold;
  r.tori = t4.tori;
  r.gluings = {Gluing::positive("T_x"), Gluing::positive("T_y"), Gluing::positive("T_z"),
               Gluing::positive("T_w", w_copies)};
  return r;
}

const Check* find(const IdentityReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("two-step Chern trace collapses to -eps[T] per copy") {
  auto r = t4_recipe(2);
  r.gluings[1].signs = {-1};
  const auto trace = c1_trace(r.gluings, r.tori);
  REQUIRE(trace.size() == 5);
  for (const auto& term : trace) {
    const auto& t = r.torus(term.torus_label).klass;
    CHECK(term.fibre_term == BigInt(term.sign) * t);
    CHECK(term.torus_term == BigInt(-2 * term.sign) * t);
    CHECK(term.fibre_term + term.torus_term == BigInt(-term.sign) * t);
  }
  CHECK(trace[1].sign == -1);
  CHECK(sum_c1(r.base.c1, r.gluings, r.tori) == IntVector{-3, -1, -3, 0, 0, 0});
}

TEST_CASE("five-copy T4 sum invariants") {
  const auto res = perform_recipe(t4_recipe(2));
  const auto& z = res.manifold;
  CHECK(z.euler == 60);
  CHECK(z.signature == -40);
  CHECK(*z.b2 == 58);
  CHECK(*z.b1 == 0);
  CHECK(z.simply_connected);
  CHECK(z.name == "T4 # 5 E1 [T_w x2, T_x, T_y, T_z]");
  CHECK(res.form.c1 == IntVector{-3, -3, -3, 0, 0, 0});
  CHECK(res.form.divisibility.exact);
  CHECK(res.form.divisibility.lower == 3);
  // Torus classes keep their pairings; the re-capped duals do not.
  CHECK(*z.pairing.entry(0, 3) == 1);
  CHECK_FALSE(z.pairing.entry(3, 4).has_value());
  CHECK(*z.pairing.diagonal_parity(3) == 1);
  CHECK(check_c1_identities(z, res.form).ok());
}

TEST_CASE("e and sigma are additive, 12 and -8 per copy") {
  for (std::size_t w = 1; w <= 6; ++w) {
    const auto z = perform_recipe(t4_recipe(w)).manifold;
    const long copies = 3 + static_cast<long>(w);
    CHECK(z.euler == 12 * copies);
    CHECK(z.signature == -8 * copies);
    CHECK(*z.b2 == 12 * copies - 2);
  }
  // E(1) # E(1) along F is E(2): e = 24, sigma = -16, c1 = 0.
  const auto e1 = fourman::build_e1();
  SumRecipe e2{"e2", e1.manifold, {e1.fibre}, {Gluing::positive("F")}};
  const auto res = perform_recipe(e2);
  CHECK(res.manifold.euler == 24);
  CHECK(res.manifold.signature == -16);
  CHECK(res.form.c1 == IntVector{0, 0});
  CHECK(res.form.divisibility.undefined);
  // Section of E(2) has square -2.
  CHECK(*res.manifold.pairing.diagonal_parity(1) == 0);
}

TEST_CASE("fundamental group is killed only when every generator torus is glued") {
  auto r = t4_recipe(1);
  r.gluings = {Gluing::positive("T_x"), Gluing::positive("T_y"), Gluing::positive("T_w")};
  const auto z = perform_recipe(r).manifold;
  CHECK_FALSE(z.simply_connected);
  CHECK_FALSE(z.b1.has_value());
  CHECK_FALSE(z.b2.has_value());
}

TEST_CASE("recipe validation") {
  SUBCASE("reversed symplectic torus") {
    auto r = t4_recipe(1);
    r.gluings[0].signs = {-1};
    CHECK_THROWS_WITH_AS(validate_recipe(r), "orientation not flippable: T_x is symplectic", RecipeError);
  }
  SUBCASE("unknown torus") {
    auto r = t4_recipe(1);
    r.gluings.push_back(Gluing::positive("T_q"));
    CHECK_THROWS_AS(validate_recipe(r), RecipeError);
  }
  SUBCASE("sign count") {
    auto r = t4_recipe(2);
    r.gluings[3].signs = {1};
    CHECK_THROWS_AS(validate_recipe(r), RecipeError);
  }
  SUBCASE("bad sign value") {
    auto r = t4_recipe(1);
    r.gluings[1].signs = {0};
    CHECK_THROWS_AS(validate_recipe(r), RecipeError);
  }
  SUBCASE("zero copies") {
    auto r = t4_recipe(1);
    r.gluings[1] = Gluing::positive("T_y", 0);
    CHECK_THROWS_AS(validate_recipe(r), RecipeError);
  }
  SUBCASE("parallel copies unavailable") {
    auto r = t4_recipe(1);
    for (auto& t : r.tori)
      if (t.label == "T_w") t.parallel_copies_available = false;
    CHECK_NOTHROW(validate_recipe(r));
    r.gluings[3] = Gluing::positive("T_w", 2);
    CHECK_THROWS_AS(validate_recipe(r), RecipeError);
  }
  SUBCASE("with_signs length") {
    CHECK_THROWS_AS(t4_recipe(1).with_signs(std::vector<int>{1, 1}), RecipeError);
  }
}

TEST_CASE("flippable copies are the Lagrangian ones") {
  const auto r = t4_recipe(2);
  CHECK(r.total_copies() == 5);
  CHECK(r.flippable_copies() == std::vector<std::size_t>{1, 2});
  CHECK(r.signs_flat() == std::vector<int>{1, 1, 1, 1, 1});
}

TEST_CASE("identity checks catch a corrupted Chern class") {
  const auto r = t4_recipe(2);
  const auto res = perform_recipe(r);
  auto bad = res.form;
  bad.c1 += r.torus("T_x").klass;  // square unchanged, parity on U_x broken
  const auto rep = check_c1_identities(res.manifold, bad);
  CHECK_FALSE(rep.ok());
  CHECK(find(rep, "c1^2 = 2e + 3sigma")->status == Check::Status::pass);
  CHECK(find(rep, "characteristic on U_x")->status == Check::Status::fail);
  CHECK(find(rep, "characteristic on U_y")->status == Check::Status::pass);
}

TEST_CASE("identity checks skip undeclared pairings") {
  const auto res = perform_recipe(t4_recipe(2));
  auto f = res.form;
  f.c1 = IntVector{0, 0, 0, 1, 1, 0};
  const auto rep = check_c1_identities(res.manifold, f);
  CHECK(find(rep, "c1^2 = 2e + 3sigma")->status == Check::Status::skipped);
  CHECK(find(rep, "characteristic on U_x")->status == Check::Status::skipped);
  CHECK(find(rep, "characteristic on T_x")->status != Check::Status::skipped);
}

TEST_CASE("smooth record is independent of the signs") {
  const auto r = t4_recipe(2);
  const auto z = perform_recipe(r).manifold;
  const std::vector<int> flipped{1, -1, -1, 1, 1};
  const auto z2 = perform_recipe(r.with_signs(flipped)).manifold;
  CHECK(z == z2);
  const auto f = evaluate_form(z, r, flipped);
  CHECK(f.c1 == IntVector{-3, -1, -1, 0, 0, 0});
  CHECK(f.manifold_id == manifold_id(z));
  CHECK(check_c1_identities(z, f).ok());
}

TEST_CASE("random recipes keep both identities") {
  std::mt19937_64 rng(41);
  const std::vector<std::string> labels{"T_x", "T_y", "T_z", "T_w"};
  for (int iter = 0; iter < 200; ++iter) {
    auto r = t4_recipe(1);
    r.gluings.clear();
    for (const auto& l : labels)
      if (rng() % 4 != 0) {
        Gluing g = Gluing::positive(l, 1 + rng() % 3);
        if (r.torus(l).kind == TorusKind::lagrangian)
          for (auto& s : g.signs) s = rng() % 2 ? 1 : -1;
        r.gluings.push_back(std::move(g));
      }
    if (r.gluings.empty()) continue;
    const auto res = perform_recipe(r);
    const auto rep = check_c1_identities(res.manifold, res.form);
    CHECK(rep.ok());
  }
}

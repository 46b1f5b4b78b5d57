#include "fibresum/gompfsum.hpp"

#include <algorithm>
#include <map>

namespace fibresum::gompfsum {

using fourman::EmbeddedTorus;
using fourman::FourManifold;
using fourman::TorusKind;
using intlat::IntVector;

namespace {

const EmbeddedTorus& lookup(std::span<const EmbeddedTorus> tori, const std::string& label) {
  for (const auto& t : tori)
    if (t.label == label) return t;
  throw RecipeError("gluing references undeclared torus '" + label + "'");
}

constexpr long kEulerPerCopy = 12;      // e(E(1)) - 2 e(T^2 x D^2)
constexpr long kSignaturePerCopy = -8;  // sigma(E(1)); sigma(T^2 x D^2) = 0

}  // namespace

const EmbeddedTorus& SumRecipe::torus(const std::string& label) const { return lookup(tori, label); }

std::size_t SumRecipe::total_copies() const {
  std::size_t n = 0;
  for (const auto& g : gluings) n += g.copies;
  return n;
}

std::vector<int> SumRecipe::signs_flat() const {
  std::vector<int> out;
  for (const auto& g : gluings) out.insert(out.end(), g.signs.begin(), g.signs.end());
  return out;
}

std::vector<std::size_t> SumRecipe::flippable_copies() const {
  std::vector<std::size_t> out;
  std::size_t flat = 0;
  for (const auto& g : gluings) {
    const bool lagrangian = torus(g.torus_label).kind == TorusKind::lagrangian;
    for (std::size_t c = 0; c < g.copies; ++c, ++flat)
      if (lagrangian) out.push_back(flat);
  }
  return out;
}

SumRecipe SumRecipe::with_signs(std::span<const int> signs) const {
  if (signs.size() != total_copies()) throw RecipeError("sign assignment length differs from copy count");
  SumRecipe out = *this;
  std::size_t flat = 0;
  for (auto& g : out.gluings)
    for (auto& s : g.signs) s = signs[flat++];
  return out;
}

void validate_recipe(const SumRecipe& recipe) {
  for (const auto& g : recipe.gluings) {
    const auto& t = recipe.torus(g.torus_label);
    if (g.copies == 0) throw RecipeError("gluing along " + g.torus_label + " has zero copies");
    if (g.signs.size() != g.copies)
      throw RecipeError("gluing along " + g.torus_label + ": " + std::to_string(g.signs.size()) + " signs for " +
                        std::to_string(g.copies) + " copies");
    for (int s : g.signs) {
      if (s != 1 && s != -1) throw RecipeError("gluing along " + g.torus_label + ": signs must be +1 or -1");
      if (s == -1 && t.kind == TorusKind::symplectic)
        throw RecipeError("orientation not flippable: " + g.torus_label + " is symplectic");
    }
    if (g.copies > 1 && !t.parallel_copies_available)
      throw RecipeError("torus " + g.torus_label + " has no parallel copies");
    if (t.klass.size() != recipe.base.rank())
      throw RecipeError("torus " + g.torus_label + " class length differs from lattice rank");
  }
}

std::vector<CopyTerm> c1_trace(std::span<const Gluing> gluings, std::span<const EmbeddedTorus> tori) {
  std::vector<CopyTerm> out;
  for (const auto& g : gluings) {
    const auto& t = lookup(tori, g.torus_label);
    for (int s : g.signs) {
      if (s == -1 && t.kind == TorusKind::symplectic)
        throw RecipeError("orientation not flippable: " + g.torus_label + " is symplectic");
      // c1(E(1); +-omega_0) = +-[F], and [F] = [T] in the sum.
      const IntVector fibre = BigInt(s) * t.klass;
      out.push_back({g.torus_label, s, fibre, BigInt(-2 * s) * t.klass});
    }
  }
  return out;
}

IntVector sum_c1(const IntVector& c1_base, std::span<const Gluing> gluings, std::span<const EmbeddedTorus> tori) {
  IntVector c1 = c1_base;
  for (const auto& term : c1_trace(gluings, tori)) {
    c1 += term.fibre_term;
    c1 += term.torus_term;
  }
  return c1;
}

FourManifold sum_invariants(const FourManifold& base, std::span<const Gluing> gluings,
                            std::span<const EmbeddedTorus> tori) {
  std::size_t total = 0;
  for (const auto& g : gluings) total += g.copies;
  if (total == 0) return base;

  FourManifold z = base;
  z.euler = base.euler + BigInt(kEulerPerCopy) * BigInt(static_cast<unsigned long>(total));
  z.signature = base.signature + BigInt(kSignaturePerCopy) * BigInt(static_cast<unsigned long>(total));

  // Canonical name: gluings merged by label, sorted.
  std::map<std::string, std::size_t> per_torus;
  for (const auto& g : gluings) per_torus[g.torus_label] += g.copies;
  z.name = base.name + " # " + std::to_string(total) + " E1 [";
  bool first = true;
  for (const auto& [label, copies] : per_torus) {
    z.name += (first ? "" : ", ") + label + (copies > 1 ? " x" + std::to_string(copies) : "");
    first = false;
  }
  z.name += "]";

  // pi_1(E(1) \ F) = 1 kills each glued torus' pi_1 image.
  const bool generators_glued = std::all_of(base.pi1_generator_tori.begin(), base.pi1_generator_tori.end(),
                                            [&](const std::string& l) { return per_torus.count(l) > 0; });
  z.simply_connected = base.simply_connected || (base.pi1_normally_generated_by_tori && generators_glued);
  if (z.simply_connected) {
    z.b1 = BigInt(0);
    z.b2 = z.euler - 2;
    z.pi1_normally_generated_by_tori = true;
    z.pi1_generator_tori.clear();
  } else {
    z.b1.reset();
    z.b2.reset();
  }

  // Re-cap basis classes that meet glued tori.  `hits` counts intersections
  // with glued copies mod 2; unset when some pairing is undeclared.
  const std::size_t n = base.rank();
  std::vector<bool> capped(n, false);
  std::vector<std::optional<int>> hits(n, 0);
  for (const auto& g : gluings) {
    const auto& t = lookup(tori, g.torus_label);
    for (std::size_t i = 0; i < n; ++i) {
      auto p = base.pairing.pair(IntVector::unit(n, i), t.klass);
      if (!p) {
        capped[i] = true;
        hits[i].reset();
      } else if (*p != 0) {
        capped[i] = true;
        if (hits[i] && (g.copies % 2 == 1) && mpz_odd_p(p->get_mpz_t())) *hits[i] ^= 1;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!capped[i]) continue;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i && capped[k]) z.pairing.set_unknown(i, k);
    // Each cap is a section of square -1, so the square shifts by the count of
    // intersection points, which has the parity of the algebraic count.
    auto parity = base.pairing.diagonal_parity(i);
    if (parity && hits[i])
      z.pairing.set_parity_only(i, *parity ^ *hits[i]);
    else
      z.pairing.set_unknown(i, i);
  }

  // Distinguished structure: every copy positively oriented.
  std::vector<Gluing> positive;
  for (const auto& g : gluings) positive.push_back(Gluing::positive(g.torus_label, g.copies));
  z.c1 = sum_c1(base.c1, positive, tori);
  return z;
}

std::string manifold_id(const FourManifold& m) {
  return m.name + "|e=" + m.euler.get_str() + "|sigma=" + m.signature.get_str();
}

FormClass evaluate_form(const FourManifold& sum, const SumRecipe& recipe, std::span<const int> signs_flat) {
  const SumRecipe signed_recipe = recipe.with_signs(signs_flat);
  FormClass f;
  f.signs_flat.assign(signs_flat.begin(), signs_flat.end());
  f.c1 = sum_c1(recipe.base.c1, signed_recipe.gluings, recipe.tori);
  std::vector<IntVector> duals;
  for (const auto& t : recipe.tori)
    if (t.dual) duals.push_back(*t.dual);
  f.divisibility = intlat::divisibility_bounds(f.c1, sum.pairing, duals);
  f.manifold_id = manifold_id(sum);
  return f;
}

SumResult perform_recipe(const SumRecipe& recipe) {
  validate_recipe(recipe);
  SumResult r;
  r.manifold = sum_invariants(recipe.base, recipe.gluings, recipe.tori);
  r.form = evaluate_form(r.manifold, recipe, recipe.signs_flat());
  return r;
}

std::string to_string(Check::Status s) {
  switch (s) {
    case Check::Status::pass:
      return "pass";
    case Check::Status::fail:
      return "fail";
    case Check::Status::skipped:
      return "skipped";
  }
  return "?";
}

bool IdentityReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Check::Status::fail; });
}

IdentityReport check_c1_identities(const FourManifold& sum, const FormClass& form) {
  IdentityReport r;
  if (form.c1.size() != sum.rank()) {
    r.checks.push_back({"c1 dimension", Check::Status::fail, "c1 length differs from lattice rank"});
    return r;
  }

  const BigInt expected = 2 * sum.euler + 3 * sum.signature;
  if (auto sq = sum.pairing.pair(form.c1, form.c1)) {
    const bool ok = *sq == expected;
    r.checks.push_back({"c1^2 = 2e + 3sigma", ok ? Check::Status::pass : Check::Status::fail,
                        "c1^2 = " + sq->get_str() + ", 2e + 3sigma = " + expected.get_str()});
  } else {
    r.checks.push_back({"c1^2 = 2e + 3sigma", Check::Status::skipped, "pairing on the support of c1 undeclared"});
  }

  for (std::size_t i = 0; i < sum.rank(); ++i) {
    const std::string name = "characteristic on " + sum.basis_labels[i];
    const auto x = IntVector::unit(sum.rank(), i);
    auto c1x = sum.pairing.pair(form.c1, x);
    auto xx = sum.pairing.square_parity(x);
    if (!c1x || !xx) {
      r.checks.push_back({name, Check::Status::skipped, "pairing undeclared"});
      continue;
    }
    const int lhs = mpz_odd_p(c1x->get_mpz_t()) ? 1 : 0;
    r.checks.push_back({name, lhs == *xx ? Check::Status::pass : Check::Status::fail,
                        "<c1,x> = " + c1x->get_str() + ", <x,x> mod 2 = " + std::to_string(*xx)});
  }
  return r;
}

}  // namespace fibresum::gompfsum

#include "fibresum/construct.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <thread>

namespace fibresum::construct {

using fourman::EmbeddedTorus;
using fourman::FourManifold;
using fourman::TorusKind;
using gompfsum::FormClass;
using gompfsum::Gluing;
using gompfsum::SumRecipe;
using intlat::IntVector;

namespace {

const EmbeddedTorus* find(std::span<const EmbeddedTorus> tori, const std::string& label) {
  for (const auto& t : tori)
    if (t.label == label) return &t;
  return nullptr;
}

std::size_t to_size(const BigInt& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p()) throw ConstructError(std::string(what) + " out of range");
  return static_cast<std::size_t>(v.get_ui());
}

}  // namespace

HypothesisReport check_hypotheses(const FourManifold& x, std::span<const EmbeddedTorus> tori,
                                  std::span<const std::string> order, const BigInt& n) {
  if (n <= 2) throw std::invalid_argument("criterion needs n > 2");
  if (order.empty()) throw std::invalid_argument("criterion needs at least one torus");

  HypothesisReport rep;
  auto& c1 = rep.condition1;
  auto& c2 = rep.condition2;
  auto& c3 = rep.condition3;

  std::vector<const EmbeddedTorus*> chosen;
  for (const auto& label : order) {
    const auto* t = find(tori, label);
    if (!t) {
      c1.reasons.push_back("torus '" + label + "' is not declared");
      continue;
    }
    if (t->klass.size() != x.rank()) {
      c1.reasons.push_back("torus '" + label + "' has the wrong class length");
      continue;
    }
    chosen.push_back(t);
  }

  // (1) square-zero classes spanning an r-dimensional subspace, r > 1.
  c1.r = order.size();
  if (chosen.size() == order.size()) {
    std::vector<IntVector> classes;
    for (const auto* t : chosen) {
      classes.push_back(t->klass);
      auto sq = x.pairing.pair(t->klass, t->klass);
      if (!sq)
        c1.reasons.push_back(t->label + ": self-pairing undeclared");
      else if (*sq != 0)
        c1.reasons.push_back(t->label + ": not square-zero");
    }
    c1.rank = intlat::rank(classes);
    if (c1.r <= 1) c1.reasons.push_back("need r > 1 tori, got " + std::to_string(c1.r));
    if (c1.rank != c1.r)
      c1.reasons.push_back("classes span rank " + std::to_string(c1.rank) + ", expected " + std::to_string(c1.r));
  }
  c1.pass = c1.reasons.empty();

  // (2) T_1 Lagrangian; T_i>1 and the sum class symplectic.
  IntVector sum_class(x.rank());
  for (const auto* t : chosen) sum_class += t->klass;
  if (!chosen.empty()) {
    if (chosen.front()->kind != TorusKind::lagrangian)
      c2.reasons.push_back("T_1 = " + chosen.front()->label + " is not Lagrangian");
    for (std::size_t i = 1; i < chosen.size(); ++i) {
      const auto* t = chosen[i];
      if (t->kind == TorusKind::lagrangian && t->klass.is_zero())
        c2.reasons.push_back(t->label + " is a null-homologous Lagrangian torus and cannot be made symplectic");
    }
  }
  const EmbeddedTorus* sum_torus = nullptr;
  for (const auto& t : tori) {
    if (std::find(order.begin(), order.end(), t.label) != order.end()) continue;
    if (t.klass == sum_class) {
      sum_torus = &t;
      break;
    }
  }
  if (!sum_torus) {
    c2.reasons.push_back("no declared torus represents the sum class " + sum_class.to_string());
  } else {
    c2.sum_torus = sum_torus->label;
    if (sum_torus->kind != TorusKind::symplectic)
      c2.reasons.push_back("sum torus " + sum_torus->label + " is not symplectic");
    if (n - 1 > 1 && !sum_torus->parallel_copies_available)
      c2.reasons.push_back("sum torus " + sum_torus->label + " has no parallel copies");
  }
  c2.pass = c2.reasons.empty() && !chosen.empty() && chosen.size() == order.size();
  if (chosen.size() != order.size()) c2.reasons.push_back("undeclared tori");

  // (3) n | c1(X) and n does not divide 2d, d the divisibility of [T_1].
  c3.n = n;
  c3.c1_content = intlat::gcd_content(x.c1);
  c3.n_divides_c1 = mpz_divisible_p(c3.c1_content.get_mpz_t(), n.get_mpz_t()) != 0;
  if (!c3.n_divides_c1) c3.reasons.push_back("c1(X) is not divisible by n");
  if (!chosen.empty()) {
    std::vector<IntVector> duals;
    for (const auto& t : tori)
      if (t.dual && t.dual->size() == x.rank()) duals.push_back(*t.dual);
    c3.d = intlat::divisibility_bounds(chosen.front()->klass, x.pairing, duals);
    if (!c3.d.exact) {
      c3.indeterminate = true;
      c3.reasons.push_back("divisibility of [T_1] is indeterminate (bounds " + c3.d.lower.get_str() + " .. " +
                           c3.d.upper.get_str() + ")");
    } else {
      const BigInt twice = 2 * c3.d.lower;
      c3.n_divides_2d = mpz_divisible_p(twice.get_mpz_t(), n.get_mpz_t()) != 0;
      if (c3.n_divides_2d) c3.reasons.push_back("n divides 2d = " + twice.get_str());
    }
  } else {
    c3.indeterminate = true;
  }
  c3.pass = c3.n_divides_c1 && !c3.indeterminate && !c3.n_divides_2d;

  rep.overall = c1.pass && c2.pass && c3.pass;
  return rep;
}

SumRecipe build_theorem_recipe(const FourManifold& x, std::span<const EmbeddedTorus> tori,
                               std::span<const std::string> order, const BigInt& n) {
  const auto rep = check_hypotheses(x, tori, order, n);
  if (!rep.overall) {
    std::string why;
    for (const auto* reasons : {&rep.condition1.reasons, &rep.condition2.reasons, &rep.condition3.reasons})
      for (const auto& r : *reasons) why += (why.empty() ? "" : "; ") + r;
    throw ConstructError("hypotheses fail: " + why);
  }
  SumRecipe recipe;
  recipe.name = x.name + " criterion n=" + n.get_str();
  recipe.base = x;
  recipe.tori.assign(tori.begin(), tori.end());
  for (const auto& label : order) recipe.gluings.push_back(Gluing::positive(label));
  recipe.gluings.push_back(Gluing::positive(rep.condition2.sum_torus, to_size(n - 1, "n")));
  gompfsum::validate_recipe(recipe);
  return recipe;
}

namespace {

SumRecipe t4_recipe(std::string name, std::size_t w_copies) {
  auto t4 = fourman::build_t4();
  SumRecipe r;
  r.name = std::move(name);
  r.base = t4.manifold;
  r.tori = t4.tori;
  r.gluings = {Gluing::positive("T_x"), Gluing::positive("T_y"), Gluing::positive("T_z"),
               Gluing::positive("T_w", w_copies)};
  return r;
}

}  // namespace

SumRecipe corollary_recipe() { return t4_recipe("T4 along T_x, T_y, T_z, 2 T_w", 2); }

SumRecipe mcmullen_taubes_recipe() { return t4_recipe("T4 along T_x, T_y, T_z, T_w", 1); }

// ---------------------------------------------------------------------------

namespace {

struct FlatCopies {
  std::vector<const IntVector*> classes;
  std::vector<int> base_signs;
  std::vector<std::size_t> flippable;
};

FlatCopies flatten(const SumRecipe& recipe) {
  FlatCopies f;
  for (const auto& g : recipe.gluings) {
    const auto& t = recipe.torus(g.torus_label);
    for (std::size_t c = 0; c < g.copies; ++c) f.classes.push_back(&t.klass);
  }
  f.base_signs = recipe.signs_flat();
  f.flippable = recipe.flippable_copies();
  return f;
}

struct Evaluator {
  const SumRecipe& recipe;
  const FourManifold& sum;
  const FlatCopies& flat;
  std::vector<IntVector> duals;
  std::string id;

  FormClass operator()(const std::vector<int>& signs) const {
    FormClass f;
    f.signs_flat = signs;
    f.c1 = recipe.base.c1;
    // Each copy contributes eps[F] - 2 eps[T] = -eps[T].
    for (std::size_t k = 0; k < signs.size(); ++k) {
      if (signs[k] == 1)
        f.c1 -= *flat.classes[k];
      else
        f.c1 += *flat.classes[k];
    }
    f.divisibility = intlat::divisibility_bounds(f.c1, sum.pairing, duals);
    f.manifold_id = id;
    return f;
  }
};

// Unique-by-c1 forms from one contiguous block of assignments, in order.
using Block = std::vector<FormClass>;

void absorb(Block& block, std::map<IntVector, std::size_t>& seen, FormClass f) {
  if (seen.emplace(f.c1, block.size()).second) block.push_back(std::move(f));
}

}  // namespace

EnumerationResult enumerate_forms(const SumRecipe& recipe, const EnumerationOptions& options) {
  gompfsum::validate_recipe(recipe);
  EnumerationResult out;
  out.manifold = gompfsum::sum_invariants(recipe.base, recipe.gluings, recipe.tori);
  const FlatCopies flat = flatten(recipe);
  const std::size_t k = flat.flippable.size();
  out.flippable_copies = k;

  Evaluator eval{recipe, out.manifold, flat, {}, gompfsum::manifold_id(out.manifold)};
  for (const auto& t : recipe.tori)
    if (t.dual) eval.duals.push_back(*t.dual);

  auto assignment = [&](auto&& bit) {
    std::vector<int> signs = flat.base_signs;
    for (std::size_t b = 0; b < k; ++b) signs[flat.flippable[b]] = bit(b) ? -1 : 1;
    return signs;
  };

  const bool fits = k < 64 && (std::uint64_t{1} << k) <= options.cap;
  std::vector<Block> blocks;
  if (fits) {
    const std::uint64_t total = std::uint64_t{1} << k;
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    if (total < 4096) threads = 1;
    blocks.resize(threads);
    auto work = [&](unsigned t) {
      std::map<IntVector, std::size_t> seen;
      const std::uint64_t lo = total * t / threads, hi = total * (t + 1) / threads;
      for (std::uint64_t mask = lo; mask < hi; ++mask)
        absorb(blocks[t], seen, eval(assignment([mask](std::size_t b) { return (mask >> b) & 1u; })));
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    out.assignments_evaluated = total;
  } else {
    if (!options.allow_sampling)
      throw ConstructError("enumeration too large: 2^" + std::to_string(k) + " sign assignments exceed the cap of " +
                           std::to_string(options.cap));
    out.sampled = true;
    blocks.resize(1);
    std::map<IntVector, std::size_t> seen;
    std::mt19937_64 rng(options.seed);
    absorb(blocks[0], seen, eval(flat.base_signs));
    for (std::uint64_t i = 1; i < options.cap; ++i) {
      std::vector<bool> bits(k);
      for (std::size_t b = 0; b < k; ++b) bits[b] = (rng() >> 63) != 0;
      absorb(blocks[0], seen, eval(assignment([&bits](std::size_t b) { return bits[b]; })));
    }
    out.assignments_evaluated = options.cap;
  }

  std::map<IntVector, std::size_t> seen;
  for (auto& block : blocks)
    for (auto& f : block)
      if (seen.emplace(f.c1, out.forms.size()).second) out.forms.push_back(std::move(f));

  for (std::size_t i = 0; i < out.forms.size(); ++i) {
    const auto& d = out.forms[i].divisibility;
    if (d.exact)
      out.distinct_divisibilities.insert(d.lower);
    else
      out.inexact_forms.push_back(i);
  }
  out.pi0_lower_bound = pi0_lower_bound(out.forms);
  out.divisibility_inconclusive = out.forms.size() > 1 && out.distinct_divisibilities.size() <= 1;
  return out;
}

// ---------------------------------------------------------------------------

SolveResult solve_signs(std::span<const BigInt> primes) {
  if (primes.empty()) throw std::invalid_argument("need at least one prime");
  BigInt n = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const BigInt& p = primes[i];
    if (p <= 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
      throw std::invalid_argument(p.get_str() + " is not an odd prime");
    for (std::size_t j = 0; j < i; ++j)
      if (primes[j] == p) throw std::invalid_argument("primes must be distinct; " + p.get_str() + " repeats");
    n *= p;
  }

  SolveResult res;
  res.n = n;

  // c1 = (-n, -n, -(n - 1 + s)) for T_z sign sum s, so its divisibility is
  // gcd(n, n - 1 + s).  Search s upward from n - 1 + s = 1.
  std::vector<BigInt> sums;
  for (const auto& p : primes) {
    std::optional<BigInt> found;
    BigInt g;
    for (BigInt m = 1; m <= 2 * n - 2; ++m) {
      mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
      if (g == p) {
        found = m - (n - 1);
        break;
      }
    }
    if (!found) throw ConstructError("no T_z sign sum realises divisibility " + p.get_str());
    sums.push_back(*found);
  }

  BigInt k = 0;
  for (const auto& s : sums)
    if (abs(s) > k) k = abs(s);
  for (std::size_t i = 0; i < sums.size(); ++i)
    if (mpz_odd_p(BigInt(sums[i] - k).get_mpz_t()))
      throw ConstructError("sign sums of mixed parity; no common copy count");
  res.lagrangian_copies = to_size(k, "copy count");

  auto t4 = fourman::build_t4();
  SumRecipe& recipe = res.recipe;
  recipe.name = "T4 multi-prime n=" + n.get_str();
  recipe.base = t4.manifold;
  recipe.tori = t4.tori;
  recipe.gluings = {Gluing::positive("T_x"), Gluing::positive("T_y"),
                    Gluing::positive("T_z", res.lagrangian_copies), Gluing::positive("T_w", to_size(n - 1, "n"))};
  gompfsum::validate_recipe(recipe);
  res.manifold = gompfsum::sum_invariants(recipe.base, recipe.gluings, recipe.tori);

  for (std::size_t i = 0; i < primes.size(); ++i) {
    PrimeSolution sol;
    sol.prime = primes[i];
    sol.sign_sum = sums[i];
    const std::size_t negatives = to_size((k - sums[i]) / 2, "negative copies");
    sol.signs_flat = recipe.signs_flat();
    for (std::size_t c = 0; c < negatives; ++c) sol.signs_flat[2 + c] = -1;  // T_z copies follow T_x, T_y
    sol.form = gompfsum::evaluate_form(res.manifold, recipe, sol.signs_flat);

    const auto& d = sol.form.divisibility;
    if (!d.exact || d.lower != sol.prime)
      throw VerificationError("verification failed: divisibility for " + sol.prime.get_str() + " is " + d.lower.get_str());
    for (std::size_t j = 0; j < primes.size(); ++j)
      if (j != i && mpz_divisible_p(d.lower.get_mpz_t(), primes[j].get_mpz_t()))
        throw VerificationError("verification failed: " + primes[j].get_str() + " divides the form for " +
                             sol.prime.get_str());
    res.solutions.push_back(std::move(sol));
  }
  return res;
}

std::size_t pi0_lower_bound(std::span<const FormClass> forms) {
  if (forms.empty()) return 0;
  std::set<BigInt> values;
  for (const auto& f : forms) {
    if (f.manifold_id != forms.front().manifold_id)
      throw ConstructError("forms live on different manifolds: '" + f.manifold_id + "' vs '" +
                           forms.front().manifold_id + "'");
    if (f.divisibility.exact) values.insert(f.divisibility.lower);
  }
  return values.size();
}

}  // namespace fibresum::construct

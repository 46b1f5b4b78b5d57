#pragma once

// Fibre sums with copies of (E(1), F) at the level of invariants.

#include "fibresum/fourman.hpp"
#include "fibresum/intlat.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibresum::gompfsum {

class RecipeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `copies` parallel copies of one torus, each summed with its own E(1).
/// Sign +1: the symplectic orientation agrees with the torus orientation and
/// E(1) carries its Kahler form; -1: both reversed.
struct Gluing {
  std::string torus_label;
  std::size_t copies = 1;
  std::vector<int> signs;

  static Gluing positive(std::string label, std::size_t copies = 1) {
    return {std::move(label), copies, std::vector<int>(copies, 1)};
  }
};

struct SumRecipe {
  std::string name;
  fourman::FourManifold base;
  std::vector<fourman::EmbeddedTorus> tori;
  std::vector<Gluing> gluings;

  const fourman::EmbeddedTorus& torus(const std::string& label) const;
  std::size_t total_copies() const;
  /// Signs of every glued copy, gluing-major.
  std::vector<int> signs_flat() const;
  /// Flat indices of copies glued along Lagrangian tori.
  std::vector<std::size_t> flippable_copies() const;
  SumRecipe with_signs(std::span<const int> signs_flat) const;
};

struct FormClass {
  std::vector<int> signs_flat;
  intlat::IntVector c1;
  intlat::DivisibilityReport divisibility;
  std::string manifold_id;
};

/// One glued copy's two-step Chern contribution: +eps[F] from E(1), then
/// -2 eps[T = F] from the sum, with [F] identified with [T].
struct CopyTerm {
  std::string torus_label;
  int sign = 1;
  intlat::IntVector fibre_term;
  intlat::IntVector torus_term;
};

/// Throws RecipeError on unknown torus labels, malformed sign lists, reversed
/// symplectic tori, or parallel copies of a torus that has none.
void validate_recipe(const SumRecipe& recipe);

std::vector<CopyTerm> c1_trace(std::span<const Gluing> gluings, std::span<const fourman::EmbeddedTorus> tori);

/// c1_base + sum over copies of (eps[F] - 2 eps[T]) = c1_base - sum eps[T].
intlat::IntVector sum_c1(const intlat::IntVector& c1_base, std::span<const Gluing> gluings,
                         std::span<const fourman::EmbeddedTorus> tori);

/// The smooth result: e += 12 per copy, sigma -= 8 per copy (Novikov), tracked
/// classes carried over.  Basis classes meeting a glued torus are re-capped by
/// sections of E(1): their mutual pairings become undeclared and their
/// self-pairing keeps only its parity.  Independent of the signs.
fourman::FourManifold sum_invariants(const fourman::FourManifold& base, std::span<const Gluing> gluings,
                                     std::span<const fourman::EmbeddedTorus> tori);

/// Identifier of the smooth record; equal for every sign assignment.
std::string manifold_id(const fourman::FourManifold& m);

FormClass evaluate_form(const fourman::FourManifold& sum, const SumRecipe& recipe, std::span<const int> signs_flat);

struct SumResult {
  fourman::FourManifold manifold;
  FormClass form;
};

SumResult perform_recipe(const SumRecipe& recipe);

struct Check {
  enum class Status { pass, fail, skipped };
  std::string name;
  Status status = Status::skipped;
  std::string detail;
};

std::string to_string(Check::Status s);

struct IdentityReport {
  std::vector<Check> checks;
  bool ok() const;
};

/// <c1,c1> = 2e + 3 sigma and <c1,x> = <x,x> (mod 2) on each basis class,
/// wherever the needed pairings are declared.
IdentityReport check_c1_identities(const fourman::FourManifold& sum, const FormClass& form);

}  // namespace fibresum::gompfsum

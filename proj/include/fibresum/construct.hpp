#pragma once

// Construction pipelines: the Lagrangian fibre-sum criterion, sign
// enumeration, multi-prime sign solving and the pi_0 lower bound.

#include "fibresum/gompfsum.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibresum::construct {

class ConstructError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed result contradicted its own arithmetic check.
class VerificationError : public ConstructError {
 public:
  using ConstructError::ConstructError;
};

struct HypothesisReport {
  struct SpanCondition {
    bool pass = false;
    std::size_t r = 0;
    std::size_t rank = 0;
    std::vector<std::string> reasons;
  };
  struct KindCondition {
    bool pass = false;
    std::string sum_torus;  // torus representing T_1 + ... + T_r
    std::vector<std::string> reasons;
  };
  struct DivisibilityCondition {
    bool pass = false;
    bool indeterminate = false;
    BigInt n;
    BigInt c1_content;
    bool n_divides_c1 = false;
    intlat::DivisibilityReport d;  // divisibility of [T_1]
    bool n_divides_2d = false;
    std::vector<std::string> reasons;
  };

  SpanCondition condition1;
  KindCondition condition2;
  DivisibilityCondition condition3;
  bool overall = false;
};

/// Checks the three conditions of the Lagrangian fibre-sum criterion for the
/// tori `order` (T_1 first) of `x`, with the sum class looked up among `tori`.
/// Throws std::invalid_argument unless n > 2 and `order` is nonempty.
HypothesisReport check_hypotheses(const fourman::FourManifold& x, std::span<const fourman::EmbeddedTorus> tori,
                                  std::span<const std::string> order, const BigInt& n);

/// One copy of E(1) along each T_i and n - 1 along parallel copies of their
/// sum; all signs +1.  Throws ConstructError when the hypotheses fail.
gompfsum::SumRecipe build_theorem_recipe(const fourman::FourManifold& x,
                                         std::span<const fourman::EmbeddedTorus> tori,
                                         std::span<const std::string> order, const BigInt& n);

/// T^4 summed along T_x, T_y, T_z and two parallel copies of T_w.
gompfsum::SumRecipe corollary_recipe();
/// T^4 summed along T_x, T_y, T_z and one copy of T_w.
gompfsum::SumRecipe mcmullen_taubes_recipe();

struct EnumerationOptions {
  std::uint64_t cap = std::uint64_t{1} << 20;
  bool allow_sampling = false;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct EnumerationResult {
  fourman::FourManifold manifold;
  std::vector<gompfsum::FormClass> forms;  // one per distinct c1, in first-seen order
  std::set<BigInt> distinct_divisibilities;  // exact reports only
  std::vector<std::size_t> inexact_forms;    // indices into forms
  std::size_t pi0_lower_bound = 0;
  std::uint64_t assignments_evaluated = 0;
  std::size_t flippable_copies = 0;
  bool sampled = false;
  /// Several c1 vectors but at most one divisibility value.
  bool divisibility_inconclusive = false;
};

/// Evaluates every sign assignment of the copies glued along Lagrangian tori.
/// Beyond `cap` assignments it samples when allowed, else throws
/// ConstructError("enumeration too large").
EnumerationResult enumerate_forms(const gompfsum::SumRecipe& recipe, const EnumerationOptions& options = {});

struct PrimeSolution {
  BigInt prime;
  BigInt sign_sum;  // sum of the T_z copy signs
  std::vector<int> signs_flat;
  gompfsum::FormClass form;
};

struct SolveResult {
  BigInt n;
  std::size_t lagrangian_copies = 0;
  gompfsum::SumRecipe recipe;
  fourman::FourManifold manifold;
  std::vector<PrimeSolution> solutions;  // in input order
};

/// For distinct odd primes p_i with product n: T^4 summed along T_x, T_y,
/// n - 1 copies of T_w and k parallel copies of T_z, with one sign
/// assignment per p_i whose c1 has divisibility exactly p_i.  Throws
/// std::invalid_argument on an empty, repeated or non-odd-prime input.
SolveResult solve_signs(std::span<const BigInt> primes);

/// Number of distinct exact divisibilities.  Throws ConstructError when the
/// forms live on different manifolds.
std::size_t pi0_lower_bound(std::span<const gompfsum::FormClass> forms);

}  // namespace fibresum::construct

#include <random>
#include <set>

#include "doctest.h"
#include "fibresum/intlat.hpp"

using namespace fibresum;
using namespace fibresum::intlat;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rng() % (2 * bound + 1)) - bound;
  return m;
}

// Determinantal divisors: d_1 ... d_k = gcd of k x k minors.  Independent of
// the elimination in smith_normal_form.
BigInt minor_det(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Matrix sub(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = m(rows[i], cols[j]);
  return determinant(sub);
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<BigInt> invariant_factors_by_minors(const Matrix& m) {
  std::vector<BigInt> out;
  BigInt prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    BigInt g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        BigInt d = minor_det(m, r, c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) {
      out.emplace_back(0);
      prev = 0;
      continue;
    }
    out.push_back(BigInt(g / prev));
    prev = g;
  }
  return out;
}

}  // namespace

TEST_CASE("gcd_content") {
  CHECK(gcd_content(IntVector{-3, -3, -3}) == 3);
  CHECK(gcd_content(IntVector{0, 0, 0}) == 0);
  CHECK(gcd_content(IntVector{-3, -3, -1}) == 1);
  CHECK(gcd_content(IntVector{}) == 0);
}

TEST_CASE("gcd_content scales with |k|") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 500; ++iter) {
    IntVector v(1 + rng() % 6);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<long>(rng() % 201) - 100;
    const BigInt k = static_cast<long>(rng() % 41) - 20;
    CHECK(gcd_content(k * v) == abs(k) * gcd_content(v));
  }
}

TEST_CASE("arbitrary precision content") {
  BigInt big("123456789012345678901234567890", 10);
  IntVector v(std::vector<BigInt>{big * 7, big * 21, big * -35});
  CHECK(gcd_content(v) == big * 7);
}

TEST_CASE("divisibility_bounds") {
  // Hyperbolic pairing on (T_x, T_y, T_z, U_x, U_y, U_z).
  const auto hyp = PairingMatrix::from_rows({{0, 0, 0, 1, 0, 0},
                                             {0, 0, 0, 0, 1, 0},
                                             {0, 0, 0, 0, 0, 1},
                                             {1, 0, 0, 0, 0, 0},
                                             {0, 1, 0, 0, 0, 0},
                                             {0, 0, 1, 0, 0, 0}});

  SUBCASE("class pairing to (-3,-3,-3) with the duals") {
    const IntVector c{-3, -3, -3, 0, 0, 0};
    std::vector<IntVector> duals{IntVector::unit(6, 3), IntVector::unit(6, 4), IntVector::unit(6, 5)};
    for (const auto& u : duals) CHECK(*hyp.pair(c, u) == -3);
    const auto r = divisibility_bounds(c, hyp, duals);
    CHECK(r.lower == 3);
    CHECK(r.upper == 3);
    CHECK(r.exact);
    CHECK(r.witness == IntVector{-1, -1, -1, 0, 0, 0});
  }
  SUBCASE("zero vector is flagged undefined") {
    const auto r = divisibility_bounds(IntVector(6), hyp);
    CHECK(r.lower == 0);
    CHECK(r.upper == 0);
    CHECK_FALSE(r.exact);
    CHECK(r.undefined);
  }
  SUBCASE("no pairing information") {
    const auto r = divisibility_bounds(IntVector{2, 4}, PairingMatrix(2));
    CHECK(r.lower == 2);
    CHECK(r.upper == 0);
    CHECK_FALSE(r.exact);
  }
  SUBCASE("undeclared entries are skipped") {
    auto p = hyp;
    p.set_unknown(2, 5);
    const auto r = divisibility_bounds(IntVector{-3, -3, -1, 0, 0, 0}, p);
    CHECK(r.lower == 1);
    CHECK(r.upper == 3);  // only <c, U_x>, <c, U_y> remain declared
    CHECK_FALSE(r.exact);
  }
}

TEST_CASE("divisibility lower divides upper on random input") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 1 + rng() % 5;
    PairingMatrix p(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) p.set(i, j, static_cast<long>(rng() % 7) - 3);
    IntVector c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (static_cast<long>(rng() % 11) - 5) * 6;
    const auto r = divisibility_bounds(c, p);
    if (r.upper != 0) CHECK(mpz_divisible_p(r.upper.get_mpz_t(), r.lower.get_mpz_t()));
    if (r.exact) CHECK(r.lower == r.upper);
  }
}

TEST_CASE("pairing parity tracking") {
  PairingMatrix p = PairingMatrix::from_rows({{0, 1}, {1, -1}});
  CHECK(*p.square_parity(IntVector{0, 1}) == 1);
  p.set_parity_only(1, -3);
  CHECK_FALSE(p.entry(1, 1).has_value());
  CHECK(*p.diagonal_parity(1) == 1);
  CHECK(*p.square_parity(IntVector{1, 1}) == 1);
  CHECK_FALSE(p.pair(IntVector{0, 1}, IntVector{0, 1}).has_value());
  CHECK(*p.pair(IntVector{1, 0}, IntVector{0, 1}) == 1);
  p.set_unknown(1, 1);
  CHECK_FALSE(p.square_parity(IntVector{0, 1}).has_value());
  CHECK(*p.square_parity(IntVector{2, 2}) == 0);  // even coordinates never need the diagonal
}

TEST_CASE("smith_normal_form examples") {
  CHECK(smith_normal_form(Matrix::from_rows({{0, 1}, {1, 0}})).factors == std::vector<BigInt>{1, 1});
  CHECK(smith_normal_form(Matrix::from_rows({{2, 0}, {0, 2}})).factors == std::vector<BigInt>{2, 2});
  CHECK(smith_normal_form(Matrix::from_rows({{2, 0}, {0, 3}})).factors == std::vector<BigInt>{1, 6});
}

TEST_CASE("diag(2,3) oracle: brute force over small unimodular transforms") {
  const Matrix m = Matrix::from_rows({{2, 0}, {0, 3}});
  std::set<std::pair<long, long>> diagonals;
  const long r = 3;  // [-2,2] is too small to reach diag(1,6)
  std::vector<Matrix> unimodular;
  for (long a = -r; a <= r; ++a)
    for (long b = -r; b <= r; ++b)
      for (long c = -r; c <= r; ++c)
        for (long d = -r; d <= r; ++d)
          if (a * d - b * c == 1 || a * d - b * c == -1) unimodular.push_back(Matrix::from_rows({{a, b}, {c, d}}));
  for (const auto& u : unimodular)
    for (const auto& v : unimodular) {
      const Matrix d = u * m * v;
      if (d(0, 1) != 0 || d(1, 0) != 0 || d(0, 0) <= 0 || d(1, 1) <= 0) continue;
      if (!mpz_divisible_p(d(1, 1).get_mpz_t(), d(0, 0).get_mpz_t())) continue;
      diagonals.emplace(d(0, 0).get_si(), d(1, 1).get_si());
    }
  REQUIRE(diagonals == std::set<std::pair<long, long>>{{1, 6}});
  CHECK(smith_normal_form(m).factors == std::vector<BigInt>{1, 6});
}

TEST_CASE("smith_normal_form properties on random matrices") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    Matrix m = random_matrix(rng, rows, cols, 9);
    if (iter % 5 == 0 && rows > 1)  // force rank deficiency sometimes
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = 2 * m(0, j);
    const auto s = smith_normal_form(m);
    CHECK(s.left * m * s.right == s.diagonal);
    CHECK(abs(determinant(s.left)) == 1);
    CHECK(abs(determinant(s.right)) == 1);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < s.diagonal.rows(); ++i)
      for (std::size_t j = 0; j < s.diagonal.cols(); ++j)
        if (i != j) CHECK(s.diagonal(i, j) == 0);
    for (std::size_t t = 0; t < s.factors.size(); ++t) {
      CHECK(s.factors[t] >= 0);
      if (s.factors[t] != 0) ++nonzero;
      if (t + 1 < s.factors.size() && s.factors[t] != 0)
        CHECK(mpz_divisible_p(s.factors[t + 1].get_mpz_t(), s.factors[t].get_mpz_t()));
    }
    CHECK(nonzero == rank(m));
    CHECK(s.factors == invariant_factors_by_minors(m));
  }
}

TEST_CASE("rank") {
  const std::vector<IntVector> torus_classes{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  CHECK(rank(torus_classes) == 3);
  CHECK(rank(std::span<const IntVector>{}) == 0);
  const std::vector<IntVector> proportional{{2, 4}, {1, 2}};
  CHECK(rank(proportional) == 1);
}

TEST_CASE("determinant") {
  CHECK(determinant(Matrix::from_rows({{2, 0}, {0, 3}})) == 6);
  CHECK(determinant(Matrix::from_rows({{0, 1}, {1, 0}})) == -1);
  CHECK(determinant(Matrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})) == -3);
  CHECK(determinant(Matrix::from_rows({{1, 2}, {2, 4}})) == 0);
}

TEST_CASE("parse helpers") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("+7") == Rational(7));
  CHECK(parse_bigint("-15") == -15);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bigint("3.5"), std::invalid_argument);
}

#include "fibresum/intlat.hpp"

#include <algorithm>
#include <stdexcept>

namespace fibresum::intlat {

IntVector::IntVector(std::initializer_list<long> coords) {
  coords_.reserve(coords.size());
  for (long c : coords) coords_.emplace_back(c);
}

IntVector IntVector::unit(std::size_t n, std::size_t i) {
  IntVector v(n);
  v[i] = 1;
  return v;
}

bool IntVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const BigInt& c) { return c == 0; });
}

IntVector& IntVector::operator+=(const IntVector& o) {
  if (o.size() != size()) throw std::invalid_argument("IntVector: length mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

IntVector& IntVector::operator-=(const IntVector& o) {
  if (o.size() != size()) throw std::invalid_argument("IntVector: length mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

IntVector& IntVector::operator*=(const BigInt& k) {
  for (auto& c : coords_) c *= k;
  return *this;
}

bool operator<(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                      b.coords_.end(),
                                      [](const BigInt& x, const BigInt& y) { return cmp(x, y) < 0; });
}

std::string IntVector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += ",";
    out += coords_[i].get_str();
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

PairingMatrix::PairingMatrix(std::size_t dim)
    : dim_(dim), entries_(dim * dim, BigInt(0)), diag_parity_(dim) {}

PairingMatrix PairingMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  PairingMatrix p(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("pairing matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[i][j] != rows[j][i]) throw std::invalid_argument("pairing matrix must be symmetric");
      p.entries_[p.index(i, j)] = BigInt(rows[i][j]);
    }
  }
  return p;
}

std::optional<BigInt> PairingMatrix::entry(std::size_t i, std::size_t j) const {
  return entries_.at(index(i, j));
}

void PairingMatrix::set(std::size_t i, std::size_t j, const BigInt& value) {
  entries_.at(index(i, j)) = value;
  entries_.at(index(j, i)) = value;
  if (i == j) diag_parity_[i].reset();
}

void PairingMatrix::set_unknown(std::size_t i, std::size_t j) {
  entries_.at(index(i, j)).reset();
  entries_.at(index(j, i)).reset();
  if (i == j) diag_parity_[i].reset();
}

void PairingMatrix::set_parity_only(std::size_t i, int parity) {
  entries_.at(index(i, i)).reset();
  diag_parity_.at(i) = ((parity % 2) + 2) % 2;
}

std::optional<int> PairingMatrix::diagonal_parity(std::size_t i) const {
  if (const auto& e = entries_.at(index(i, i))) return static_cast<int>(mpz_odd_p(e->get_mpz_t()) ? 1 : 0);
  return diag_parity_.at(i);
}

bool PairingMatrix::fully_known() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.has_value(); });
}

std::optional<BigInt> PairingMatrix::pair(const IntVector& a, const IntVector& b) const {
  if (a.size() != dim_ || b.size() != dim_) throw std::invalid_argument("pairing: dimension mismatch");
  BigInt total = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j] == 0) continue;
      const auto& e = entries_[index(i, j)];
      if (!e) return std::nullopt;
      total += a[i] * b[j] * *e;
    }
  }
  return total;
}

std::optional<int> PairingMatrix::square_parity(const IntVector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("pairing: dimension mismatch");
  // x.x = sum x_i^2 P_ii + 2 sum_{i<j} x_i x_j P_ij, and x_i^2 = x_i mod 2.
  int parity = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!mpz_odd_p(x[i].get_mpz_t())) continue;
    auto p = diagonal_parity(i);
    if (!p) return std::nullopt;
    parity ^= *p;
  }
  return parity;
}

// ---------------------------------------------------------------------------

BigInt gcd_content(const IntVector& v) {
  BigInt g = 0;
  for (const auto& c : v.coords()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

DivisibilityReport divisibility_bounds(const IntVector& c, const PairingMatrix& pairing,
                                       std::span<const IntVector> duals) {
  if (c.size() != pairing.dim()) throw std::invalid_argument("divisibility_bounds: dimension mismatch");
  for (const auto& u : duals)
    if (u.size() != c.size()) throw std::invalid_argument("divisibility_bounds: dual length mismatch");

  DivisibilityReport r;
  r.lower = gcd_content(c);
  if (r.lower == 0) {
    r.upper = 0;
    r.undefined = true;
    r.witness = c;
    return r;
  }
  r.witness = c;
  for (std::size_t i = 0; i < c.size(); ++i) mpz_divexact(r.witness[i].get_mpz_t(), c[i].get_mpz_t(), r.lower.get_mpz_t());

  BigInt upper = 0;
  auto absorb = [&](const IntVector& u) {
    if (auto v = pairing.pair(c, u)) mpz_gcd(upper.get_mpz_t(), upper.get_mpz_t(), v->get_mpz_t());
  };
  for (std::size_t i = 0; i < c.size(); ++i) absorb(IntVector::unit(c.size(), i));
  for (const auto& u : duals) absorb(u);
  r.upper = upper;
  r.exact = r.upper != 0 && r.lower == r.upper;
  return r;
}

}  // namespace fibresum::intlat

#pragma once

// Exact integer vector and lattice algebra over GMP integers.

#include "fibresum/bigint.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fibresum::intlat {

/// Coordinates of a class in a declared basis of a tracked lattice.
class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t n) : coords_(n) {}
  explicit IntVector(std::vector<BigInt> coords) : coords_(std::move(coords)) {}
  IntVector(std::initializer_list<long> coords);

  static IntVector unit(std::size_t n, std::size_t i);

  std::size_t size() const { return coords_.size(); }
  bool empty() const { return coords_.empty(); }
  const BigInt& operator[](std::size_t i) const { return coords_[i]; }
  BigInt& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<BigInt>& coords() const { return coords_; }

  bool is_zero() const;

  IntVector& operator+=(const IntVector& o);
  IntVector& operator-=(const IntVector& o);
  IntVector& operator*=(const BigInt& k);

  friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
  friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
  friend IntVector operator*(const BigInt& k, IntVector a) { return a *= k; }
  friend IntVector operator-(IntVector a) { return a *= BigInt(-1); }

  friend bool operator==(const IntVector& a, const IntVector& b) { return a.coords_ == b.coords_; }
  /// Lexicographic; only used for ordered containers.
  friend bool operator<(const IntVector& a, const IntVector& b);

  std::string to_string() const;

 private:
  std::vector<BigInt> coords_;
};

/// Dense integer matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<long>>& rows);
  static Matrix from_vectors(std::span<const IntVector> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Symmetric intersection pairing on a tracked sublattice.
///
/// Entries may be undeclared: after a fibre sum some classes are re-capped and
/// their exact self-intersections are not tracked.  For diagonal entries the
/// residue mod 2 can still be declared on its own.
class PairingMatrix {
 public:
  PairingMatrix() = default;
  explicit PairingMatrix(std::size_t dim);  // all entries known and zero
  static PairingMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t dim() const { return dim_; }

  std::optional<BigInt> entry(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const BigInt& value);
  void set_unknown(std::size_t i, std::size_t j);
  /// Marks the diagonal entry as unknown except for its parity.
  void set_parity_only(std::size_t i, int parity);

  /// x_i^2 mod 2 when known, from the exact entry or a declared parity.
  std::optional<int> diagonal_parity(std::size_t i) const;
  bool fully_known() const;

  /// <a, b>, or nullopt when a needed entry is undeclared.
  std::optional<BigInt> pair(const IntVector& a, const IntVector& b) const;
  /// <x, x> mod 2, needing only the diagonal parities on odd coordinates.
  std::optional<int> square_parity(const IntVector& x) const;

  friend bool operator==(const PairingMatrix& a, const PairingMatrix& b) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const { return i * dim_ + j; }

  std::size_t dim_ = 0;
  std::vector<std::optional<BigInt>> entries_;
  std::vector<std::optional<int>> diag_parity_;
};

struct DivisibilityReport {
  BigInt lower;       // content of c, witnessed by c = lower * witness
  BigInt upper;       // gcd of declared pairings of c; 0 = unconstrained
  bool exact = false;
  bool undefined = false;  // c = 0
  IntVector witness;
};

/// gcd of |coordinates|; 0 for the zero vector.
BigInt gcd_content(const IntVector& v);

/// Bounds the divisibility of `c` from below by its content and from above by
/// the gcd of all declared pairings <c, e_i> and <c, u> for u in `duals`.
DivisibilityReport divisibility_bounds(const IntVector& c, const PairingMatrix& pairing,
                                       std::span<const IntVector> duals = {});

struct SmithForm {
  std::vector<BigInt> factors;  // d_1 | d_2 | ... , nonnegative, length min(rows, cols)
  Matrix left;                  // U
  Matrix right;                 // V
  Matrix diagonal;              // D = U * M * V
};

SmithForm smith_normal_form(const Matrix& m);

/// Determinant by fraction-free elimination.
BigInt determinant(const Matrix& m);

/// Rank over Q of the span, by fraction-free elimination.
std::size_t rank(std::span<const IntVector> vectors);
std::size_t rank(const Matrix& m);

}  // namespace fibresum::intlat

#include "fibresum/intlat.hpp"

#include <stdexcept>
#include <utility>

namespace fibresum::intlat {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("Matrix: ragged rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_vectors(std::span<const IntVector> rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("Matrix: vectors of unequal length");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("Matrix product: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

namespace {

// row_dst += k * row_src, on A and the left transform together.
void add_row(Matrix& a, Matrix& u, std::size_t dst, std::size_t src, const BigInt& k) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(dst, j) += k * a(src, j);
  for (std::size_t j = 0; j < u.cols(); ++j) u(dst, j) += k * u(src, j);
}

void add_col(Matrix& a, Matrix& v, std::size_t dst, std::size_t src, const BigInt& k) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, dst) += k * a(i, src);
  for (std::size_t i = 0; i < v.rows(); ++i) v(i, dst) += k * v(i, src);
}

}  // namespace

SmithForm smith_normal_form(const Matrix& m) {
  Matrix a = m;
  Matrix u = Matrix::identity(m.rows());
  Matrix v = Matrix::identity(m.cols());
  const std::size_t steps = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = t, pj = t;
      bool found = false;
      for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
          if (a(i, j) == 0) continue;
          if (!found || mpz_cmpabs(a(i, j).get_mpz_t(), a(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) break;
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool cleared = true;
      BigInt q;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        add_row(a, u, i, t, -q);
        if (a(i, t) != 0) cleared = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        add_col(a, v, j, t, -q);
        if (a(t, j) != 0) cleared = false;
      }
      if (!cleared) continue;

      // Enforce d_t | every later entry; a failing row is folded into row t.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < a.rows() && divides_all; ++i)
        for (std::size_t j = t + 1; j < a.cols(); ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            add_row(a, u, t, i, BigInt(1));
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < a.cols(); ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < u.cols(); ++j) u(t, j) = -u(t, j);
    }
  }

  SmithForm out;
  out.factors.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) out.factors.push_back(a(t, t));
  out.left = std::move(u);
  out.right = std::move(v);
  out.diagonal = std::move(a);
  return out;
}

namespace {

// Fraction-free Gaussian elimination (Bareiss).  Returns the rank; `det`
// receives the determinant when the matrix is square.
std::size_t bareiss(Matrix a, BigInt* det) {
  const std::size_t rows = a.rows(), cols = a.cols();
  BigInt prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      a.swap_rows(p, r);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a(i, j) = a(i, j) * a(r, c) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  if (det) {
    if (rows != cols) throw std::invalid_argument("determinant of a non-square matrix");
    *det = (r == rows) ? BigInt(sign * (rows == 0 ? BigInt(1) : a(rows - 1, cols - 1))) : BigInt(0);
  }
  return r;
}

}  // namespace

BigInt determinant(const Matrix& m) {
  BigInt det;
  bareiss(m, &det);
  return det;
}

std::size_t rank(const Matrix& m) { return bareiss(m, nullptr); }

std::size_t rank(std::span<const IntVector> vectors) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_vectors(vectors));
}

}  // namespace fibresum::intlat

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fanofiber/error.hpp"

namespace fanofiber {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A lattice vector with machine-width coordinates. Polytope data at desk
/// scale never comes close to the 64-bit range; arithmetic on these goes
/// through the checked helpers below.
using Point = std::vector<std::int64_t>;

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "add");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "sub");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "mul");
  return r;
}

inline std::int64_t narrow(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::Overflow, "narrow");
  return static_cast<std::int64_t>(v);
}

}  // namespace checked

inline std::int64_t dot(const Point& a, const Point& b) {
  assert(a.size() == b.size());
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked::add(s, checked::mul(a[i], b[i]));
  return s;
}

inline std::int64_t content(const Point& p) {
  std::int64_t g = 0;
  for (auto x : p) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

inline bool is_primitive(const Point& p) { return content(p) == 1; }

inline bool is_zero(const Point& p) {
  return std::all_of(p.begin(), p.end(), [](std::int64_t x) { return x == 0; });
}

inline Point operator+(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::add(a[i], b[i]);
  return r;
}

inline Point operator-(const Point& a) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::sub(0, a[i]);
  return r;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Dense row-major matrix with immutable shape.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  template <class Row>
  static Matrix from_rows(const std::vector<Row>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = T(rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  T& at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
    return (*this)(i, j);
  }
  const T& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
    return (*this)(i, j);
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const T& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;

inline IntMatrix to_int_matrix(const std::vector<Point>& rows, std::size_t cols) {
  return IntMatrix::from_rows(rows, cols);
}

// ---------------------------------------------------------------------------
// Fraction-free elimination

/// Determinant and rank via Bareiss elimination. Used as the independent route
/// against which the normal forms are cross-checked.
inline std::size_t bareiss_rank(IntMatrix a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a(p, c) == 0) ++p;
    if (p == m) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j)
        a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

inline BigInt determinant(IntMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline std::size_t rank(const std::vector<Point>& rows, std::size_t cols) {
  return bareiss_rank(to_int_matrix(rows, cols));
}

// ---------------------------------------------------------------------------
// Hermite and Smith normal forms

struct HnfResult {
  IntMatrix H;
  IntMatrix U;  // unimodular, U * A == H
};

/// Row-style Hermite normal form. Pivots are positive and the entries above a
/// pivot lie in [0, pivot). Zero rows collect at the bottom.
inline HnfResult hnf_decompose(const IntMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("hnf of empty matrix");
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    bool have_pivot = false;
    for (;;) {
      std::optional<std::size_t> p;
      for (std::size_t i = r; i < m; ++i)
        if (h(i, c) != 0 && (!p || abs(h(i, c)) < abs(h(*p, c)))) p = i;
      if (!p) break;
      have_pivot = true;
      h.swap_rows(*p, r);
      u.swap_rows(*p, r);
      bool clear = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        BigInt q = floor_div(h(i, c), h(r, c));
        h.add_row(i, r, -q);
        u.add_row(i, r, -q);
        if (h(i, c) != 0) clear = false;
      }
      if (clear) break;
    }
    if (!have_pivot) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q = floor_div(h(i, c), h(r, c));
      if (q == 0) continue;
      h.add_row(i, r, -q);
      u.add_row(i, r, -q);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

struct SnfResult {
  IntMatrix S;
  IntMatrix U;  // unimodular, U * A * V == S
  IntMatrix V;  // unimodular

  /// Nonzero diagonal entries d_1 | d_2 | ...
  std::vector<BigInt> invariant_factors() const {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
      if (S(i, i) != 0) out.push_back(S(i, i));
    return out;
  }
  std::size_t rank() const { return invariant_factors().size(); }
};

inline SnfResult snf_decompose(const IntMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("snf of empty matrix");
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix s = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Pivot: smallest nonzero magnitude in the trailing block, row-major first.
      std::optional<std::pair<std::size_t, std::size_t>> p;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (s(i, j) != 0 && (!p || abs(s(i, j)) < abs(s(p->first, p->second)))) p = {i, j};
      if (!p) break;
      s.swap_rows(p->first, t);
      u.swap_rows(p->first, t);
      s.swap_cols(p->second, t);
      v.swap_cols(p->second, t);

      bool residue = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        BigInt q = floor_div(s(i, t), s(t, t));
        s.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (s(i, t) != 0) residue = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        BigInt q = floor_div(s(t, j), s(t, t));
        s.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (s(t, j) != 0) residue = true;
      }
      if (residue) continue;

      // Row and column are clear; enforce divisibility of the trailing block.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      s.add_row(t, *bad_row, BigInt(1));
      u.add_row(t, *bad_row, BigInt(1));
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

// ---------------------------------------------------------------------------
// Rational elimination

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    const Rational inv = 1 / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r && a(i, c) != 0) a.add_row(i, r, -a(i, c));
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Solves sum_j x_j * columns[j] == target over Q. Returns nullopt when the
/// system is inconsistent; free variables are set to zero.
inline std::optional<std::vector<Rational>> solve_rational(const std::vector<Point>& columns,
                                                           const Point& target) {
  const std::size_t n = target.size(), h = columns.size();
  RatMatrix a(n, h + 1);
  for (std::size_t j = 0; j < h; ++j)
    for (std::size_t i = 0; i < n; ++i) a(i, j) = columns[j][i];
  for (std::size_t i = 0; i < n; ++i) a(i, h) = target[i];
  const auto pivots = rref(a);
  if (!pivots.empty() && pivots.back() == h) return std::nullopt;
  std::vector<Rational> x(h);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a(r, h);
  return x;
}

/// Basis of the rational kernel {x : A x = 0}, scaled to primitive integer vectors.
inline std::vector<std::vector<BigInt>> kernel_basis(const RatMatrix& a_in) {
  RatMatrix a = a_in;
  const auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<BigInt>> out;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(a.cols());
    x[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a(r, f);
    BigInt den = 1;
    for (const auto& q : x) den = boost::multiprecision::lcm(den, denominator(q));
    std::vector<BigInt> v(x.size());
    BigInt g = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      v[i] = numerator(x[i]) * (den / denominator(x[i]));
      g = boost::multiprecision::gcd(g, v[i]);
    }
    if (g > 1)
      for (auto& e : v) e /= g;
    out.push_back(std::move(v));
  }
  return out;
}

/// Expresses target as a positive integer combination of linearly independent
/// generators. Returns nullopt when target is outside their rational span.
inline std::optional<std::vector<std::int64_t>> positive_integer_combination(
    const Point& target, const std::vector<Point>& generators) {
  auto x = solve_rational(generators, target);
  if (!x) return std::nullopt;
  std::vector<std::int64_t> coeffs;
  coeffs.reserve(x->size());
  for (const auto& q : *x) {
    if (denominator(q) != 1)
      throw Error(ErrorCode::NonIntegralSolution, "coefficient " + q.str());
    if (q <= 0) throw Error(ErrorCode::NonPositive, "coefficient " + q.str());
    coeffs.push_back(checked::narrow(numerator(q)));
  }
  return coeffs;
}

}  // namespace fanofiber

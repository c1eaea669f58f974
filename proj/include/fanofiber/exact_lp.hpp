#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "fanofiber/error.hpp"
#include "fanofiber/lattice.hpp"

namespace fanofiber {

/// Normalized fraction of 64-bit integers (gcd 1, positive denominator).
/// Every operation is exact or throws Overflow.
class SmallRational {
 public:
  SmallRational() = default;
  SmallRational(std::int64_t n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  SmallRational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend SmallRational operator+(const SmallRational& a, const SmallRational& b) {
    const std::int64_t g = std::gcd(a.den_, b.den_);
    const __int128 n = static_cast<__int128>(a.num_) * (b.den_ / g) +
                       static_cast<__int128>(b.num_) * (a.den_ / g);
    const __int128 d = static_cast<__int128>(a.den_) * (b.den_ / g);
    return from_wide(n, d);
  }
  friend SmallRational operator-(const SmallRational& a) {
    return SmallRational(checked::sub(0, a.num_), a.den_, raw_tag{});
  }
  friend SmallRational operator-(const SmallRational& a, const SmallRational& b) { return a + (-b); }
  friend SmallRational operator*(const SmallRational& a, const SmallRational& b) {
    const std::int64_t g1 = std::gcd(a.num_, b.den_), g2 = std::gcd(b.num_, a.den_);
    const __int128 n = static_cast<__int128>(a.num_ / (g1 ? g1 : 1)) * (b.num_ / (g2 ? g2 : 1));
    const __int128 d = static_cast<__int128>(a.den_ / (g2 ? g2 : 1)) * (b.den_ / (g1 ? g1 : 1));
    return from_wide(n, d);
  }
  friend SmallRational operator/(const SmallRational& a, const SmallRational& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero");
    return a * SmallRational(b.den_, b.num_);
  }
  SmallRational& operator+=(const SmallRational& o) { return *this = *this + o; }
  SmallRational& operator-=(const SmallRational& o) { return *this = *this - o; }
  SmallRational& operator*=(const SmallRational& o) { return *this = *this * o; }
  SmallRational& operator/=(const SmallRational& o) { return *this = *this / o; }

  friend bool operator==(const SmallRational&, const SmallRational&) = default;
  friend bool operator<(const SmallRational& a, const SmallRational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const SmallRational& a, const SmallRational& b) { return !(b < a); }
  friend bool operator>(const SmallRational& a, const SmallRational& b) { return b < a; }

  Rational to_rational() const { return Rational(num_, den_); }

 private:
  struct raw_tag {};
  SmallRational(std::int64_t n, std::int64_t d, raw_tag) : num_(n), den_(d) {}

  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (d < 0) {
      n = checked::sub(0, n);
      d = checked::sub(0, d);
    }
    const std::int64_t g = std::gcd(n, d);
    num_ = n / g;
    den_ = d / g;
  }

  static SmallRational from_wide(__int128 n, __int128 d) {
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) throw Error(ErrorCode::Overflow, "rational");
    return SmallRational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d), raw_tag{});
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

namespace detail {

inline Rational to_rational(const Rational& q) { return q; }
inline Rational to_rational(const SmallRational& q) { return q.to_rational(); }

template <class Q>
std::optional<std::vector<Rational>> phase_one(const std::vector<std::vector<std::int64_t>>& generators,
                                               const std::vector<std::int64_t>& target) {
  const std::size_t rows = target.size(), n = generators.size();
  const std::size_t cols = n + rows;  // structural then artificial variables

  // Tableau rows: [G | I | rhs], sign-normalized so rhs >= 0.
  Matrix<Q> t(rows + 1, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::int64_t sign = target[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) t(i, j) = Q(sign * generators[j][i]);
    t(i, n + i) = Q(1);
    t(i, cols) = Q(sign * target[i]);
  }
  // Objective row: minimize the sum of artificials, expressed in nonbasics.
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < n || j == cols) t(rows, j) -= t(i, j);

  std::vector<std::size_t> basic(rows);
  for (std::size_t i = 0; i < rows; ++i) basic[i] = n + i;

  const Q zero(0);
  for (;;) {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j < cols; ++j)
      if (t(rows, j) < zero) {
        enter = j;
        break;
      }
    if (!enter) break;
    std::optional<std::size_t> leave;
    Q best;
    for (std::size_t i = 0; i < rows; ++i) {
      if (t(i, *enter) <= zero) continue;
      Q ratio = t(i, cols) / t(i, *enter);
      if (!leave || ratio < best || (ratio == best && basic[i] < basic[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) break;  // phase one is bounded below by zero
    const std::size_t r = *leave;
    const Q piv = t(r, *enter);
    for (std::size_t j = 0; j <= cols; ++j)
      if (t(r, j) != zero) t(r, j) /= piv;
    for (std::size_t i = 0; i <= rows; ++i) {
      if (i == r || t(i, *enter) == zero) continue;
      const Q f = t(i, *enter);
      for (std::size_t j = 0; j <= cols; ++j)
        if (t(r, j) != zero) t(i, j) -= f * t(r, j);
    }
    basic[r] = *enter;
  }

  if (t(rows, cols) != zero) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < rows; ++i)
    if (basic[i] < n) x[basic[i]] = to_rational(t(i, cols));
  return x;
}

}  // namespace detail

/// Decides whether `target` lies in the cone spanned by `generators` (all of
/// the same length) and returns nonnegative coefficients when it does.
/// Phase-one simplex over exact rationals with Bland's rule; redundant
/// equality rows are tolerated (their artificials stay basic at zero).
inline std::optional<std::vector<Rational>> cone_membership(
    const std::vector<std::vector<std::int64_t>>& generators,
    const std::vector<std::int64_t>& target) {
  try {
    return detail::phase_one<SmallRational>(generators, target);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Overflow) throw;
  }
  return detail::phase_one<Rational>(generators, target);
}

}  // namespace fanofiber

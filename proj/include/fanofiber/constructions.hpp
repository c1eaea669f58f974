#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fanofiber/error.hpp"
#include "fanofiber/lattice.hpp"
#include "fanofiber/polytope.hpp"

namespace fanofiber {

namespace detail {

inline Point unit(std::size_t d, std::size_t i) {
  Point e(d, 0);
  e[i] = 1;
  return e;
}

}  // namespace detail

/// Projective space: conv{e_1, ..., e_n, -(e_1 + ... + e_n)}.
inline Polytope simplex(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "simplex dimension must be >= 1");
  std::vector<Point> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(detail::unit(n, i));
  v.push_back(Point(n, -1));
  return Polytope::from_vertices(std::move(v));
}

/// t-del Pezzo polytope V_d: conv{+-e_i, +-(e_1 + ... + e_d)}, d even.
inline Polytope t_del_pezzo(std::size_t d) {
  if (d < 2 || d % 2 != 0) throw Error(ErrorCode::OddDimension, std::to_string(d));
  std::vector<Point> v;
  for (std::size_t i = 0; i < d; ++i) {
    v.push_back(detail::unit(d, i));
    v.push_back(-detail::unit(d, i));
  }
  v.push_back(Point(d, 1));
  v.push_back(Point(d, -1));
  return Polytope::from_vertices(std::move(v));
}

/// Vertex list of the Klyachko polytope of order k and dimension d:
/// the basis, the all-ones vector, the negated consecutive blocks of length
/// k-1, and the negated stride-(k-1) sets starting at 1, ..., k-1.
inline std::vector<Point> klyachko_vertices(std::size_t k, std::size_t d) {
  if (k < 2 || d < 2 || d % (k - 1) != 0)
    throw Error(ErrorCode::DivisibilityViolated,
                "k=" + std::to_string(k) + " d=" + std::to_string(d));
  const std::size_t step = k - 1;
  std::vector<Point> v;
  for (std::size_t i = 0; i < d; ++i) v.push_back(detail::unit(d, i));
  v.push_back(Point(d, 1));
  for (std::size_t start = 0; start < d; start += step) {
    Point b(d, 0);
    for (std::size_t i = start; i < start + step; ++i) b[i] = -1;
    v.push_back(std::move(b));
  }
  for (std::size_t start = 0; start < step; ++start) {
    Point s(d, 0);
    for (std::size_t i = start; i < d; i += step) s[i] = -1;
    v.push_back(std::move(s));
  }
  return v;
}

inline Polytope klyachko(std::size_t k, std::size_t d) {
  return Polytope::from_vertices(klyachko_vertices(k, d));
}

inline std::size_t klyachko_vertex_count(std::size_t k, std::size_t d) {
  return d + 1 + d / (k - 1) + (k - 1);
}

/// Integer covector on Z^d, evaluated by the exact pairing.
struct LinearForm {
  Point coefficients;

  std::int64_t operator()(const Point& x) const { return dot(coefficients, x); }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// L_{k,h} = sum_{i=0}^{k-3} (x_{h+ik} + ... + x_{h+ik+k-2} - (k-1) x_{h+ik+k-1}),
/// with 1-based coordinate indices.
inline LinearForm klyachko_facet_form(std::size_t k, std::size_t h, std::size_t d) {
  if (k < 2 || h < 1) throw Error(ErrorCode::IndexOutOfRange, "k >= 2 and h >= 1 required");
  LinearForm form{Point(d, 0)};
  for (std::size_t i = 0; i + 3 <= k; ++i) {
    const std::size_t base = h + i * k;  // 1-based
    if (base + k - 1 > d)
      throw Error(ErrorCode::IndexOutOfRange,
                  "x_" + std::to_string(base + k - 1) + " with d=" + std::to_string(d));
    for (std::size_t j = 0; j + 1 < k; ++j) form.coefficients[base + j - 1] += 1;
    form.coefficients[base + k - 2] -= static_cast<std::int64_t>(k - 1);
  }
  return form;
}

/// Free sum conv(V(P) x {0} u {0} x V(Q)); the polytope of the product variety.
inline Polytope free_sum(const Polytope& p, const Polytope& q) {
  const std::size_t dp = p.dim(), dq = q.dim();
  std::vector<Point> v;
  for (const auto& x : p.vertices()) {
    Point y(dp + dq, 0);
    std::copy(x.begin(), x.end(), y.begin());
    v.push_back(std::move(y));
  }
  for (const auto& x : q.vertices()) {
    Point y(dp + dq, 0);
    std::copy(x.begin(), x.end(), y.begin() + static_cast<std::ptrdiff_t>(dp));
    v.push_back(std::move(y));
  }
  return Polytope::from_vertices(std::move(v));
}

inline Polytope power(const Polytope& p, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "power exponent must be >= 1");
  Polytope acc = p;
  for (std::size_t i = 1; i < n; ++i) acc = free_sum(acc, p);
  return acc;
}

}  // namespace fanofiber

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>

#include "fanofiber/error.hpp"
#include "fanofiber/lattice.hpp"
#include "fanofiber/polytope.hpp"

namespace fanofiber {

/// Every facet is a d-simplex whose vertices form a lattice basis.
inline bool is_smooth(const Polytope& p) {
  for (const auto& f : p.facets()) {
    if (count(f.vertices) != p.dim()) return false;
    const BigInt det = determinant(to_int_matrix(p.points(f.vertices), p.dim()));
    if (abs(det) != 1) return false;
  }
  return true;
}

inline bool is_reflexive(const Polytope& p) {
  return std::all_of(p.facets().begin(), p.facets().end(),
                     [](const Facet& f) { return f.level == 1; });
}

/// The only lattice points are the vertices and the origin.
inline bool is_terminal(const Polytope& p) {
  for (const auto& x : enumerate_lattice_points(p))
    if (!is_zero(x) && !p.index_of(x)) return false;
  return true;
}

/// Rank of the group of 1-cycles, m - d, for the Q-factorial (simplicial) case.
inline std::size_t picard_rank(const Polytope& p) {
  if (!is_simplicial(p)) throw Error(ErrorCode::NotSimplicial);
  return p.num_vertices() - p.dim();
}

/// Largest integer dividing the anticanonical class: the image of the
/// all-ones vector in coker(M -> Z^V), read off in Smith coordinates.
inline std::int64_t fano_index(const Polytope& p) {
  if (!is_smooth(p)) throw Error(ErrorCode::NotSmooth);
  const std::size_t m = p.num_vertices();
  const auto snf = snf_decompose(to_int_matrix(p.vertices(), p.dim()));
  const auto factors = snf.invariant_factors();
  // Smooth fans have vertices spanning N, so every invariant factor is 1 and
  // the cokernel is the free part Z^{m-d}; U * 1 gives the class there.
  assert(std::all_of(factors.begin(), factors.end(), [](const BigInt& f) { return f == 1; }));
  BigInt g = 0;
  for (std::size_t i = factors.size(); i < m; ++i) {
    BigInt y = 0;
    for (std::size_t j = 0; j < m; ++j) y += snf.U(i, j);
    g = boost::multiprecision::gcd(g, y);
  }
  return checked::narrow(g);
}

struct FanoFlags {
  bool smooth = false;
  bool reflexive = false;
  bool terminal = false;
  bool simplicial = false;
  std::optional<std::size_t> picard_rank;    // set when simplicial
  std::optional<std::int64_t> fano_index;    // set when smooth
};

inline FanoFlags fano_flags(const Polytope& p) {
  FanoFlags f;
  f.smooth = is_smooth(p);
  f.reflexive = is_reflexive(p);
  f.terminal = is_terminal(p);
  f.simplicial = is_simplicial(p);
  if (f.simplicial) f.picard_rank = picard_rank(p);
  if (f.smooth) f.fano_index = fano_index(p);
  return f;
}

}  // namespace fanofiber

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fanofiber/constructions.hpp"
#include "fanofiber/error.hpp"
#include "fanofiber/lattice.hpp"
#include "fanofiber/polytope.hpp"
#include "fanofiber/symmetry.hpp"
#include "fanofiber/toric.hpp"

namespace fanofiber {

struct FibreLikeVerdict {
  bool fibre_like = false;
  std::size_t t = 0;
  std::size_t k = 0;
};

/// A smooth toric Fano variety is fibre-like iff (vertex orbits) - (dimension
/// of the fixed subspace) == 1.
inline FibreLikeVerdict is_fibre_like(const Polytope& p, const AutomorphismGroup& g) {
  if (!is_smooth(p)) throw Error(ErrorCode::NotSmooth);
  const auto s = symmetry_report(g);
  return {s.t == s.k + 1, s.t, s.k};
}

inline FibreLikeVerdict is_fibre_like(const Polytope& p) {
  if (!is_smooth(p)) throw Error(ErrorCode::NotSmooth);
  return is_fibre_like(p, automorphism_group(p));
}

inline bool is_centrally_symmetric(const Polytope& p) {
  return std::all_of(p.vertices().begin(), p.vertices().end(),
                     [&](const Point& v) { return p.index_of(-v).has_value(); });
}

// ---------------------------------------------------------------------------
// Prime decomposition

/// Where one copy of a factor sits inside the ambient lattice.
struct FactorEmbedding {
  std::vector<std::size_t> vertex_indices;  // vertices of the input polytope
  SmallMatrix basis;                        // rows: lattice basis of the saturated span
};

struct PrimeFactor {
  Polytope polytope;  // in its own coordinates Z^{dim}
  std::size_t multiplicity = 1;
  std::vector<FactorEmbedding> copies;
};

struct PrimeDecomposition {
  std::vector<PrimeFactor> factors;

  std::size_t num_copies() const {
    std::size_t n = 0;
    for (const auto& f : factors) n += f.multiplicity;
    return n;
  }
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// Connected components of the linear matroid on the given vectors: each
/// non-basis element is joined to the basis elements of its fundamental
/// circuit.
inline std::vector<std::vector<std::size_t>> matroid_components(const std::vector<Point>& vectors) {
  const std::size_t m = vectors.size();
  std::vector<std::size_t> basis;
  std::vector<Point> chosen;
  for (std::size_t i = 0; i < m; ++i) {
    chosen.push_back(vectors[i]);
    if (small_rank(chosen) == chosen.size())
      basis.push_back(i);
    else
      chosen.pop_back();
  }
  UnionFind uf(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (std::find(basis.begin(), basis.end(), i) != basis.end()) continue;
    auto x = solve_rational(chosen, vectors[i]);
    if (!x) continue;  // cannot happen: the basis spans
    for (std::size_t j = 0; j < basis.size(); ++j)
      if ((*x)[j] != 0) uf.unite(i, basis[j]);
  }
  std::vector<std::vector<std::size_t>> comps;
  std::vector<long> slot(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = uf.find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(comps.size());
      comps.emplace_back();
    }
    comps[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return comps;
}

inline IntMatrix integer_inverse(const IntMatrix& u) {
  const std::size_t n = u.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = Rational(u(i, j));
    aug(i, n + i) = 1;
  }
  rref(aug);
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = numerator(aug(i, n + j));
  return inv;
}

/// Rows of a Hermite-reduced basis of span_Q(rows) intersected with Z^d.
inline SmallMatrix saturated_basis(const std::vector<Point>& rows, std::size_t d) {
  const auto snf = snf_decompose(to_int_matrix(rows, d));
  const std::size_t r = snf.rank();
  const IntMatrix vinv = integer_inverse(snf.V);
  IntMatrix basis(r, d);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < d; ++j) basis(i, j) = vinv(i, j);
  const auto h = hnf_decompose(basis).H;
  SmallMatrix out(r, d);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = checked::narrow(h(i, j));
  return out;
}

}  // namespace detail

/// Splits the polytope into free-sum-irreducible factors, grouped up to
/// lattice equivalence.
inline PrimeDecomposition decompose_prime(const Polytope& p) {
  const std::size_t d = p.dim();
  const auto comps = detail::matroid_components(p.vertices());

  std::vector<Point> all_basis_rows;
  PrimeDecomposition out;
  for (const auto& comp : comps) {
    std::vector<Point> rows;
    for (auto i : comp) rows.push_back(p.vertex(i));
    SmallMatrix basis = detail::saturated_basis(rows, d);
    const std::size_t r = basis.rows();
    std::vector<Point> basis_cols;
    for (std::size_t i = 0; i < r; ++i) {
      basis_cols.push_back(basis.row(i));
      all_basis_rows.push_back(basis.row(i));
    }
    std::vector<Point> local;
    for (const auto& v : rows) {
      auto x = solve_rational(basis_cols, v);
      if (!x) throw Error(ErrorCode::NotDirectSum, "vertex outside its component span");
      Point y;
      for (const auto& q : *x) {
        if (denominator(q) != 1) throw Error(ErrorCode::NotDirectSum, "non-integral coordinates");
        y.push_back(checked::narrow(numerator(q)));
      }
      local.push_back(std::move(y));
    }
    Polytope factor = Polytope::from_vertices(std::move(local));
    FactorEmbedding emb{comp, std::move(basis)};

    bool placed = false;
    for (auto& f : out.factors) {
      if (f.polytope.dim() != factor.dim() || f.polytope.num_vertices() != factor.num_vertices())
        continue;
      if (lattice_isomorphism(f.polytope, factor)) {
        ++f.multiplicity;
        f.copies.push_back(std::move(emb));
        placed = true;
        break;
      }
    }
    if (!placed) out.factors.push_back({std::move(factor), 1, {std::move(emb)}});
  }

  if (all_basis_rows.size() != d ||
      abs(determinant(to_int_matrix(all_basis_rows, d))) != 1)
    throw Error(ErrorCode::NotDirectSum, "component lattices do not span N");
  return out;
}

/// Reassembles the free sum of the factors, with multiplicity.
inline Polytope recompose(const PrimeDecomposition& dec) {
  std::optional<Polytope> acc;
  for (const auto& f : dec.factors)
    for (std::size_t i = 0; i < f.multiplicity; ++i)
      acc = acc ? free_sum(*acc, f.polytope) : f.polytope;
  return *acc;
}

// ---------------------------------------------------------------------------
// Recognition

struct RecognizedFamily {
  enum class Kind { ProjectiveSpace, Segment, TDelPezzo, Klyachko, Unknown };
  Kind kind = Kind::Unknown;
  std::size_t dim = 0;
  std::size_t order = 0;  // Klyachko order k

  /// Short name in the notation P^n, V_d, W^k_d.
  std::string name() const {
    switch (kind) {
      case Kind::ProjectiveSpace: return "P^" + std::to_string(dim);
      case Kind::Segment: return "P^1";
      case Kind::TDelPezzo: return "V_" + std::to_string(dim);
      case Kind::Klyachko: return "W^" + std::to_string(order) + "_" + std::to_string(dim);
      case Kind::Unknown: return "?";
    }
    return "?";
  }
  friend bool operator==(const RecognizedFamily&, const RecognizedFamily&) = default;
};

/// Names one irreducible polytope by testing lattice equivalence against the
/// constructed families, in order P^n, V_d, W^k_d (increasing k).
inline RecognizedFamily recognize_irreducible(const Polytope& q) {
  using K = RecognizedFamily::Kind;
  const std::size_t n = q.dim(), m = q.num_vertices();
  if (m == n + 1 && lattice_equivalent(q, simplex(n)))
    return {n == 1 ? K::Segment : K::ProjectiveSpace, n, 0};
  if (n % 2 == 0 && m == 2 * n + 2 && lattice_equivalent(q, t_del_pezzo(n)))
    return {K::TDelPezzo, n, 2};
  for (std::size_t k = 2; k <= n + 1; ++k) {
    if (n % (k - 1) != 0 || (k == 2 && n % 2 == 0)) continue;
    if (m != klyachko_vertex_count(k, n)) continue;
    if (lattice_equivalent(q, klyachko(k, n))) return {K::Klyachko, n, k};
  }
  return {K::Unknown, n, 0};
}

struct Recognition {
  RecognizedFamily family;
  std::size_t multiplicity = 1;
  std::size_t dim = 0;
  std::size_t num_vertices = 0;
};

inline std::vector<Recognition> recognize(const PrimeDecomposition& dec) {
  std::vector<Recognition> out;
  for (const auto& f : dec.factors)
    out.push_back({recognize_irreducible(f.polytope), f.multiplicity, f.polytope.dim(),
                   f.polytope.num_vertices()});
  return out;
}

inline std::vector<Recognition> recognize(const Polytope& p) { return recognize(decompose_prime(p)); }

/// "(P^1)^3", "V_4", "P^1 x P^2", ...
inline std::string describe(const std::vector<Recognition>& rec) {
  std::string s;
  for (const auto& r : rec) {
    if (!s.empty()) s += " x ";
    s += r.multiplicity == 1 ? r.family.name()
                             : "(" + r.family.name() + ")^" + std::to_string(r.multiplicity);
  }
  return s;
}

}  // namespace fanofiber

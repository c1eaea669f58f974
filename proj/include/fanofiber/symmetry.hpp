#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fanofiber/error.hpp"
#include "fanofiber/lattice.hpp"
#include "fanofiber/polytope.hpp"

namespace fanofiber {

using SmallMatrix = Matrix<std::int64_t>;

inline Point map_point(const SmallMatrix& g, const Point& x) {
  Point y(g.rows(), 0);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) y[i] = checked::add(y[i], checked::mul(g(i, j), x[j]));
  return y;
}

/// Unimodular map together with the vertex permutation it induces:
/// matrix * vertex(i) == target vertex(permutation[i]).
struct LatticeMap {
  SmallMatrix matrix;
  std::vector<std::size_t> permutation;

  friend bool operator==(const LatticeMap&, const LatticeMap&) = default;
};

inline LatticeMap compose(const LatticeMap& outer, const LatticeMap& inner) {
  std::vector<std::size_t> perm(inner.permutation.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = outer.permutation[inner.permutation[i]];
  return {outer.matrix * inner.matrix, std::move(perm)};
}

inline LatticeMap identity_map(const Polytope& p) {
  std::vector<std::size_t> perm(p.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  return {SmallMatrix::identity(p.dim()), std::move(perm)};
}

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  v ^= v >> 30;
  v *= 0xbf58476d1ce4e5b9ULL;
  v ^= v >> 27;
  v *= 0x94d049bb133111ebULL;
  v ^= v >> 31;
  return h ^ v;
}

inline std::uint64_t hash_sorted(std::vector<std::uint64_t> values) {
  std::sort(values.begin(), values.end());
  std::uint64_t h = values.size();
  for (auto v : values) h = mix(h, v);
  return h;
}

/// Lattice invariants of one polytope derived from its pairing matrix
/// <facet normal, vertex>: per vertex, the multiset of its row; per vertex
/// pair, the multiset of paired column entries.
struct PairingInvariants {
  std::vector<std::uint64_t> vertex_key;
  std::vector<std::vector<std::uint64_t>> pair_key;
  std::uint64_t polytope_key = 0;

  explicit PairingInvariants(const Polytope& p) {
    const std::size_t m = p.num_vertices(), nf = p.facets().size();
    std::vector<std::vector<std::int64_t>> a(m, std::vector<std::int64_t>(nf));
    for (std::size_t v = 0; v < m; ++v)
      for (std::size_t f = 0; f < nf; ++f) a[v][f] = p.pairing(v, f);
    vertex_key.resize(m);
    for (std::size_t v = 0; v < m; ++v) {
      std::vector<std::uint64_t> row(a[v].begin(), a[v].end());
      vertex_key[v] = hash_sorted(std::move(row));
    }
    pair_key.assign(m, std::vector<std::uint64_t>(m));
    std::vector<std::uint64_t> buf(nf);
    for (std::size_t v = 0; v < m; ++v)
      for (std::size_t w = 0; w < m; ++w) {
        for (std::size_t f = 0; f < nf; ++f)
          buf[f] = (static_cast<std::uint64_t>(a[v][f]) << 32) ^
                   static_cast<std::uint32_t>(a[w][f]);
        pair_key[v][w] = hash_sorted(buf);
      }
    polytope_key = hash_sorted(vertex_key);
  }
};

struct SpanEntry {
  std::size_t vertex;
  std::vector<std::int64_t> numerators;  // coefficients on basis[0..level]
  std::int64_t denominator;
};

/// Backtracking search for lattice maps source -> target that send a fixed
/// basis of source vertices to chosen target vertices.
class MapSearch {
 public:
  MapSearch(const Polytope& source, const Polytope& target)
      : src_(source), dst_(target), src_inv_(source), dst_inv_(target) {
    init_basis();
  }
  MapSearch(const Polytope& p, const PairingInvariants& inv)
      : src_(p), dst_(p), src_inv_(inv), dst_inv_(inv) {
    init_basis();
  }

  const std::vector<std::size_t>& basis() const { return basis_; }

  /// Whether `candidate` can be the image of basis()[level] given images of
  /// the earlier basis vertices.
  bool compatible(const std::vector<std::size_t>& images, std::size_t level,
                  std::size_t candidate) const {
    const std::size_t b = basis_[level];
    if (dst_inv_.vertex_key[candidate] != src_inv_.vertex_key[b]) return false;
    for (std::size_t j = 0; j < level; ++j) {
      if (images[j] == candidate) return false;
      if (dst_inv_.pair_key[images[j]][candidate] != src_inv_.pair_key[basis_[j]][b]) return false;
    }
    return true;
  }

  /// First map (in lexicographic order of basis images) extending `prefix`.
  std::optional<LatticeMap> find(std::vector<std::size_t> prefix) const {
    std::vector<std::size_t> images = prefix;
    images.resize(basis_.size());
    for (std::size_t j = 0; j < prefix.size(); ++j) {
      if (!compatible(images, j, images[j])) return std::nullopt;
      if (!span_consistent(images, j)) return std::nullopt;
    }
    return dfs(images, prefix.size());
  }

 private:
  void init_basis() {
    const std::size_t d = src_.dim();
    std::vector<Point> chosen;
    for (std::size_t i = 0; i < src_.num_vertices() && basis_.size() < d; ++i) {
      chosen.push_back(src_.vertex(i));
      if (small_rank(chosen) == chosen.size())
        basis_.push_back(i);
      else
        chosen.pop_back();
    }
    // Columns of B are the basis vertices; g = Img * B^{-1} = Img * adj / det.
    IntMatrix b(d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) b(i, j) = src_.vertex(basis_[j])[i];
    det_ = checked::narrow(determinant(b));
    RatMatrix aug(d, 2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) aug(i, j) = Rational(b(i, j));
      aug(i, d + i) = 1;
    }
    rref(aug);
    adj_ = SmallMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Rational q = aug(i, d + j) * det_;
        adj_(i, j) = checked::narrow(numerator(q));
      }

    // Vertices whose image is already forced once basis[0..level] is placed.
    span_.assign(d, {});
    std::vector<bool> placed(src_.num_vertices(), false);
    for (std::size_t level = 0; level < d; ++level) {
      std::vector<Point> cols;
      for (std::size_t j = 0; j <= level; ++j) cols.push_back(src_.vertex(basis_[j]));
      for (std::size_t v = 0; v < src_.num_vertices(); ++v) {
        if (placed[v]) continue;
        auto x = solve_rational(cols, src_.vertex(v));
        if (!x) continue;
        placed[v] = true;
        BigInt den = 1;
        for (const auto& q : *x) den = boost::multiprecision::lcm(den, denominator(q));
        SpanEntry e{v, {}, checked::narrow(den)};
        for (const auto& q : *x) e.numerators.push_back(checked::narrow(numerator(q) * (den / denominator(q))));
        span_[level].push_back(std::move(e));
      }
    }
  }

  static std::size_t small_rank(const std::vector<Point>& rows) { return detail::small_rank(rows); }

  bool span_consistent(const std::vector<std::size_t>& images, std::size_t level) const {
    const std::size_t d = src_.dim();
    for (const auto& e : span_[level]) {
      Point y(d, 0);
      for (std::size_t j = 0; j <= level; ++j) {
        const Point& w = dst_.vertex(images[j]);
        for (std::size_t i = 0; i < d; ++i)
          y[i] = checked::add(y[i], checked::mul(e.numerators[j], w[i]));
      }
      for (auto& c : y) {
        if (c % e.denominator != 0) return false;
        c /= e.denominator;
      }
      auto idx = dst_.index_of(y);
      if (!idx || dst_inv_.vertex_key[*idx] != src_inv_.vertex_key[e.vertex]) return false;
    }
    return true;
  }

  std::optional<LatticeMap> dfs(std::vector<std::size_t>& images, std::size_t level) const {
    if (level == basis_.size()) return build(images);
    for (std::size_t c = 0; c < dst_.num_vertices(); ++c) {
      if (!compatible(images, level, c)) continue;
      images[level] = c;
      if (!span_consistent(images, level)) continue;
      if (auto r = dfs(images, level + 1)) return r;
    }
    return std::nullopt;
  }

  std::optional<LatticeMap> build(const std::vector<std::size_t>& images) const {
    const std::size_t d = src_.dim();
    SmallMatrix img(d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i) img(i, j) = dst_.vertex(images[j])[i];
    SmallMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        std::int64_t s = 0;
        for (std::size_t k = 0; k < d; ++k) s = checked::add(s, checked::mul(img(i, k), adj_(k, j)));
        if (s % det_ != 0) return std::nullopt;
        g(i, j) = s / det_;
      }
    IntMatrix gb(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) gb(i, j) = g(i, j);
    if (abs(determinant(gb)) != 1) return std::nullopt;
    std::vector<std::size_t> perm(src_.num_vertices());
    for (std::size_t v = 0; v < perm.size(); ++v) {
      auto idx = dst_.index_of(map_point(g, src_.vertex(v)));
      if (!idx) return std::nullopt;
      perm[v] = *idx;
    }
    return LatticeMap{std::move(g), std::move(perm)};
  }

  const Polytope& src_;
  const Polytope& dst_;
  PairingInvariants src_inv_;
  PairingInvariants dst_inv_;
  std::vector<std::size_t> basis_;
  SmallMatrix adj_;
  std::int64_t det_ = 1;
  std::vector<std::vector<SpanEntry>> span_;
};

// Orbit of `start` under the permutation action of `gens`.
inline std::vector<std::size_t> orbit_of(std::size_t start, const std::vector<LatticeMap>& gens,
                                         std::size_t m) {
  std::vector<bool> seen(m, false);
  std::vector<std::size_t> out{start};
  seen[start] = true;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const auto& g : gens) {
      const auto w = g.permutation[out[k]];
      if (!seen[w]) {
        seen[w] = true;
        out.push_back(w);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t fixed_dimension(const std::vector<SmallMatrix>& gens, std::size_t d) {
  std::vector<Point> rows;
  for (const auto& g : gens)
    for (std::size_t i = 0; i < d; ++i) {
      Point r(d);
      for (std::size_t j = 0; j < d; ++j) r[j] = g(i, j) - (i == j ? 1 : 0);
      rows.push_back(std::move(r));
    }
  return d - rank(rows, d);
}

inline SmallMatrix inverse_transpose(const SmallMatrix& g) {
  const std::size_t d = g.rows();
  RatMatrix aug(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) aug(i, j) = g(i, j);
    aug(i, d + i) = 1;
  }
  rref(aug);
  SmallMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(j, i) = checked::narrow(numerator(aug(i, d + j)));
  return out;
}

}  // namespace detail

/// Aut(P) as a subgroup of GL(N, Z), held as a strong generating set relative
/// to a base of linearly independent vertices.
class AutomorphismGroup {
 public:
  std::size_t dim = 0;
  std::size_t num_vertices = 0;
  std::vector<LatticeMap> generators;
  std::vector<std::size_t> base;
  std::vector<std::size_t> basic_orbit_sizes;
  std::uint64_t order = 1;
  std::vector<std::vector<std::size_t>> orbits;
  std::size_t fixed_dim = 0;

  std::size_t num_orbits() const { return orbits.size(); }

  /// Fixed-subspace dimension of the contragredient action on M_Q.
  std::size_t dual_fixed_dim() const {
    std::vector<SmallMatrix> mats;
    for (const auto& g : generators) mats.push_back(detail::inverse_transpose(g.matrix));
    return detail::fixed_dimension(mats, dim);
  }

  /// Every element, sorted by matrix entries. Throws when the group is larger
  /// than `limit`.
  std::vector<LatticeMap> elements(std::uint64_t limit = 100000) const {
    if (order > limit) throw Error(ErrorCode::Overflow, "group order " + std::to_string(order));
    std::vector<std::size_t> id(num_vertices);
    std::iota(id.begin(), id.end(), 0);
    std::vector<LatticeMap> out{{SmallMatrix::identity(dim), id}};
    std::set<std::vector<std::size_t>> seen{id};
    for (std::size_t k = 0; k < out.size(); ++k)
      for (const auto& g : generators) {
        LatticeMap h = compose(g, out[k]);
        if (seen.insert(h.permutation).second) out.push_back(std::move(h));
      }
    std::sort(out.begin(), out.end(), [](const LatticeMap& a, const LatticeMap& b) {
      for (std::size_t i = 0; i < a.matrix.rows(); ++i)
        for (std::size_t j = 0; j < a.matrix.cols(); ++j)
          if (a.matrix(i, j) != b.matrix(i, j)) return a.matrix(i, j) < b.matrix(i, j);
      return false;
    });
    return out;
  }
};

inline AutomorphismGroup automorphism_group(const Polytope& p) {
  const std::size_t m = p.num_vertices(), d = p.dim();
  const detail::PairingInvariants inv(p);
  const detail::MapSearch search(p, inv);

  AutomorphismGroup g;
  g.dim = d;
  g.num_vertices = m;
  g.base = search.basis();
  g.basic_orbit_sizes.assign(d, 1);

  // Basic orbits from the bottom of the stabilizer chain up; the generators
  // found so far at deeper levels all lie in the current stabilizer.
  for (std::size_t level = d; level-- > 0;) {
    std::vector<std::size_t> prefix(g.base.begin(), g.base.begin() + static_cast<std::ptrdiff_t>(level));
    auto orbit = detail::orbit_of(g.base[level], g.generators, m);
    std::vector<std::size_t> images = prefix;
    images.resize(d);
    for (std::size_t v = 0; v < m; ++v) {
      if (std::binary_search(orbit.begin(), orbit.end(), v)) continue;
      if (!search.compatible(images, level, v)) continue;
      prefix.push_back(v);
      auto found = search.find(prefix);
      prefix.pop_back();
      if (!found) continue;
      g.generators.push_back(std::move(*found));
      orbit = detail::orbit_of(g.base[level], g.generators, m);
    }
    g.basic_orbit_sizes[level] = orbit.size();
  }
  for (auto s : g.basic_orbit_sizes) g.order *= s;

  std::vector<bool> assigned(m, false);
  for (std::size_t v = 0; v < m; ++v) {
    if (assigned[v]) continue;
    auto o = detail::orbit_of(v, g.generators, m);
    for (auto w : o) assigned[w] = true;
    g.orbits.push_back(std::move(o));
  }
  std::vector<SmallMatrix> mats;
  for (const auto& h : g.generators) mats.push_back(h.matrix);
  g.fixed_dim = detail::fixed_dimension(mats, d);
  return g;
}

struct SymmetryReport {
  std::size_t t = 0;  // vertex orbits
  std::size_t k = 0;  // dimension of the fixed subspace
  bool vertex_transitive = false;
};

inline SymmetryReport symmetry_report(const AutomorphismGroup& g) {
  return {g.num_orbits(), g.fixed_dim, g.num_orbits() == 1};
}

inline SymmetryReport symmetry_report(const Polytope& p) {
  return symmetry_report(automorphism_group(p));
}

/// A unimodular map carrying V(p) onto V(q), or nullopt.
inline std::optional<LatticeMap> lattice_isomorphism(const Polytope& p, const Polytope& q) {
  if (p.dim() != q.dim()) throw Error(ErrorCode::DimensionMismatch);
  if (p.num_vertices() != q.num_vertices() || p.facets().size() != q.facets().size())
    return std::nullopt;
  detail::MapSearch search(p, q);
  return search.find({});
}

inline bool lattice_equivalent(const Polytope& p, const Polytope& q) {
  return p.dim() == q.dim() && lattice_isomorphism(p, q).has_value();
}

}  // namespace fanofiber

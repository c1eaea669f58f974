#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fanofiber/error.hpp"
#include "fanofiber/lattice.hpp"

namespace fanofiber {

/// Subset of vertex indices. Desk-scale polytopes have at most 64 vertices.
using VertexSet = std::uint64_t;
inline constexpr std::size_t kMaxVertices = 64;

inline constexpr VertexSet bit(std::size_t i) { return VertexSet{1} << i; }
inline std::size_t count(VertexSet s) { return static_cast<std::size_t>(std::popcount(s)); }
inline bool contains(VertexSet outer, VertexSet inner) { return (outer & inner) == inner; }

inline std::vector<std::size_t> indices(VertexSet s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

inline VertexSet make_set(const std::vector<std::size_t>& idx) {
  VertexSet s = 0;
  for (auto i : idx) s |= bit(i);
  return s;
}

/// Supporting hyperplane {x : <normal, x> = level} with the polytope on the
/// side <normal, x> <= level.
struct Facet {
  Point normal;
  std::int64_t level = 0;
  VertexSet vertices = 0;

  friend bool operator==(const Facet&, const Facet&) = default;
};

/// A face of the polytope; equivalently, a cone of the face fan. `dim` is the
/// dimension of the face as a polytope, so the empty face has dim -1 and its
/// cone is the origin.
struct Face {
  VertexSet vertices = 0;
  int dim = -1;

  int cone_dim() const { return dim + 1; }
  bool is_zero() const { return vertices == 0; }
  friend bool operator==(const Face&, const Face&) = default;
};

namespace detail {

// Rank of a small integer matrix. Entries here are minors of vertex data, so
// a 128-bit accumulator is ample.
inline std::size_t small_rank(std::vector<Point> a) {
  if (a.empty()) return 0;
  const std::size_t m = a.size(), n = a[0].size();
  std::size_t r = 0;
  std::int64_t prev = 1;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(a[r][c]) * a[i][j] -
                     static_cast<__int128>(a[i][c]) * a[r][j];
        v /= prev;
        if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorCode::Overflow, "small_rank");
        a[i][j] = static_cast<std::int64_t>(v);
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

inline void make_primitive(Point& p) {
  const auto g = content(p);
  if (g > 1)
    for (auto& x : p) x /= g;
}

struct Ray {
  Point coords;  // (w, c) with w.x + c >= 0 on every processed point
  VertexSet zero = 0;
};

// Double description: facets of conv(points) are the extreme rays of the cone
// {a : a . (p, 1) >= 0 for all points p}. Constraints are inserted one at a
// time; adjacency of a positive/negative pair is decided algebraically.
inline std::vector<Ray> facet_rays(const std::vector<Point>& points, std::size_t d) {
  const std::size_t m = points.size();
  std::vector<Point> hom(m);
  for (std::size_t i = 0; i < m; ++i) {
    hom[i] = points[i];
    hom[i].push_back(1);
  }

  std::vector<std::size_t> basis;
  {
    std::vector<Point> chosen;
    for (std::size_t i = 0; i < m && basis.size() < d + 1; ++i) {
      chosen.push_back(hom[i]);
      if (small_rank(chosen) == chosen.size())
        basis.push_back(i);
      else
        chosen.pop_back();
    }
  }

  // Initial simplicial cone: the columns of the inverse of the basis rows.
  RatMatrix aug(d + 1, 2 * (d + 1));
  for (std::size_t i = 0; i <= d; ++i) {
    for (std::size_t j = 0; j <= d; ++j) aug(i, j) = hom[basis[i]][j];
    aug(i, d + 1 + i) = 1;
  }
  rref(aug);
  std::vector<Ray> rays;
  VertexSet processed = 0;
  for (auto b : basis) processed |= bit(b);
  for (std::size_t j = 0; j <= d; ++j) {
    BigInt den = 1;
    for (std::size_t i = 0; i <= d; ++i)
      den = boost::multiprecision::lcm(den, denominator(aug(i, d + 1 + j)));
    Ray r;
    r.coords.resize(d + 1);
    for (std::size_t i = 0; i <= d; ++i) {
      const Rational& q = aug(i, d + 1 + j);
      r.coords[i] = checked::narrow(numerator(q) * (den / denominator(q)));
    }
    make_primitive(r.coords);
    r.zero = processed & ~bit(basis[j]);
    rays.push_back(std::move(r));
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (processed & bit(i)) continue;
    std::vector<Ray> pos, neg, next;
    std::vector<std::int64_t> pos_val, neg_val;
    for (auto& r : rays) {
      const auto s = dot(r.coords, hom[i]);
      if (s > 0) {
        pos.push_back(r);
        pos_val.push_back(s);
      } else if (s < 0) {
        neg.push_back(r);
        neg_val.push_back(s);
      } else {
        r.zero |= bit(i);
        next.push_back(r);
      }
    }
    for (std::size_t a = 0; a < pos.size(); ++a) {
      next.push_back(pos[a]);
      for (std::size_t b = 0; b < neg.size(); ++b) {
        const VertexSet common = pos[a].zero & neg[b].zero;
        if (count(common) + 1 < d) continue;
        std::vector<Point> rows;
        for (auto k : indices(common)) rows.push_back(hom[k]);
        if (small_rank(rows) != d - 1) continue;
        Ray r;
        r.coords.resize(d + 1);
        for (std::size_t k = 0; k <= d; ++k)
          r.coords[k] = checked::sub(checked::mul(pos_val[a], neg[b].coords[k]),
                                     checked::mul(neg_val[b], pos[a].coords[k]));
        make_primitive(r.coords);
        r.zero = common | bit(i);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
    processed |= bit(i);
  }
  return rays;
}

}  // namespace detail

/// Full-dimensional lattice polytope with the origin in its interior, stored
/// with its vertices in lexicographic order and its facets cached.
class Polytope {
 public:
  /// Validates the point set and computes the facet description. Throws
  /// NotFullDimensional, OriginNotInterior, DuplicateVertex, RedundantPoint.
  static Polytope from_vertices(std::vector<Point> vertices) {
    if (vertices.empty()) throw Error(ErrorCode::NotFullDimensional, "no vertices");
    const std::size_t d = vertices[0].size();
    if (d == 0) throw Error(ErrorCode::NotFullDimensional, "dimension 0");
    for (const auto& v : vertices)
      if (v.size() != d) throw Error(ErrorCode::InvariantViolation, "mixed vertex dimensions");
    if (vertices.size() > kMaxVertices)
      throw Error(ErrorCode::TooManyVertices, std::to_string(vertices.size()));
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
      throw Error(ErrorCode::DuplicateVertex);

    std::vector<Point> hom;
    for (const auto& v : vertices) {
      hom.push_back(v);
      hom.back().push_back(1);
    }
    if (detail::small_rank(hom) != d + 1) throw Error(ErrorCode::NotFullDimensional);

    Polytope p;
    p.dim_ = d;
    p.vertices_ = std::move(vertices);
    for (auto& r : detail::facet_rays(p.vertices_, d)) {
      Facet f;
      f.normal.assign(r.coords.begin(), r.coords.begin() + static_cast<std::ptrdiff_t>(d));
      for (auto& x : f.normal) x = -x;
      f.level = r.coords[d];
      if (f.level <= 0) throw Error(ErrorCode::OriginNotInterior);
      const auto g = content(f.normal);
      for (auto& x : f.normal) x /= g;
      f.level /= g;
      f.vertices = r.zero;
      p.facets_.push_back(std::move(f));
    }
    std::sort(p.facets_.begin(), p.facets_.end(),
              [](const Facet& a, const Facet& b) { return a.normal < b.normal; });

    // A listed point is a vertex iff the facets through it pin it down.
    for (std::size_t i = 0; i < p.vertices_.size(); ++i) {
      std::vector<Point> normals;
      for (const auto& f : p.facets_)
        if (f.vertices & bit(i)) normals.push_back(f.normal);
      if (detail::small_rank(normals) != d) {
        std::string coords;
        for (auto x : p.vertices_[i]) coords += (coords.empty() ? "" : " ") + std::to_string(x);
        throw Error(ErrorCode::RedundantPoint, coords);
      }
    }
    return p;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const Point& vertex(std::size_t i) const { return vertices_.at(i); }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  VertexSet all_vertices() const {
    return vertices_.size() == 64 ? ~VertexSet{0} : bit(vertices_.size()) - 1;
  }

  bool incident(std::size_t vertex, std::size_t facet) const {
    return (facets_.at(facet).vertices & bit(vertex)) != 0;
  }

  /// <facet normal, vertex>; invariant under lattice automorphisms.
  std::int64_t pairing(std::size_t vertex, std::size_t facet) const {
    return dot(facets_[facet].normal, vertices_[vertex]);
  }

  std::optional<std::size_t> index_of(const Point& p) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p);
    if (it == vertices_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  std::vector<Point> points(VertexSet s) const {
    std::vector<Point> out;
    for (auto i : indices(s)) out.push_back(vertices_[i]);
    return out;
  }

  /// True iff the vertex subset lies on a common proper face.
  bool on_common_face(VertexSet s) const {
    return std::any_of(facets_.begin(), facets_.end(),
                       [s](const Facet& f) { return contains(f.vertices, s); });
  }

  /// Smallest face containing the vertex subset, or nullopt when no proper
  /// face contains it.
  std::optional<Face> face_hull(VertexSet s) const {
    VertexSet acc = all_vertices();
    bool any = false;
    for (const auto& f : facets_)
      if (contains(f.vertices, s)) {
        acc &= f.vertices;
        any = true;
      }
    if (!any) return std::nullopt;
    return make_face(acc);
  }

  Face make_face(VertexSet s) const {
    return Face{s, static_cast<int>(detail::small_rank(points(s))) - 1};
  }

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.vertices_ == b.vertices_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Facet> facets_;
};

inline Polytope compute_facets(std::vector<Point> vertices) {
  return Polytope::from_vertices(std::move(vertices));
}

/// The unique face whose cone contains `point` in its relative interior; the
/// zero face for the origin.
inline Face minimal_face_containing(const Polytope& p, const Point& point) {
  if (point.size() != p.dim()) throw Error(ErrorCode::DimensionMismatch);
  if (is_zero(point)) return Face{};
  // Scale the point onto the boundary: the tight facets are those maximizing
  // <u, x> / level.
  std::optional<std::size_t> best;
  std::vector<std::size_t> tight;
  for (std::size_t f = 0; f < p.facets().size(); ++f) {
    const auto& fa = p.facets()[f];
    if (!best) {
      best = f;
      tight = {f};
      continue;
    }
    const auto& fb = p.facets()[*best];
    const __int128 lhs = static_cast<__int128>(dot(fa.normal, point)) * fb.level;
    const __int128 rhs = static_cast<__int128>(dot(fb.normal, point)) * fa.level;
    if (lhs > rhs) {
      best = f;
      tight = {f};
    } else if (lhs == rhs) {
      tight.push_back(f);
    }
  }
  VertexSet s = p.all_vertices();
  for (auto f : tight) s &= p.facets()[f].vertices;
  return p.make_face(s);
}

/// All lattice points of the polytope, in lexicographic order.
inline std::vector<Point> enumerate_lattice_points(const Polytope& p) {
  const std::size_t d = p.dim();
  Point lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = hi[j] = p.vertex(0)[j];
    for (const auto& v : p.vertices()) {
      lo[j] = std::min(lo[j], v[j]);
      hi[j] = std::max(hi[j], v[j]);
    }
  }
  std::vector<Point> out;
  Point x = lo;
  for (;;) {
    const bool inside = std::all_of(p.facets().begin(), p.facets().end(), [&](const Facet& f) {
      return dot(f.normal, x) <= f.level;
    });
    if (inside) out.push_back(x);
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (x[j] < hi[j]) {
        ++x[j];
        break;
      }
      x[j] = lo[j];
      if (j == 0) return out;
    }
  }
}

using RationalPoint = std::vector<Rational>;

/// Vertices of the polar {y : <y, x> <= 1 on P}: one per facet, normal / level.
inline std::vector<RationalPoint> dual_polytope(const Polytope& p) {
  std::vector<RationalPoint> out;
  for (const auto& f : p.facets()) {
    RationalPoint y;
    for (auto c : f.normal) y.emplace_back(Rational(c, f.level));
    out.push_back(std::move(y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_simplicial(const Polytope& p) {
  return std::all_of(p.facets().begin(), p.facets().end(),
                     [&](const Facet& f) { return count(f.vertices) == p.dim(); });
}

}  // namespace fanofiber

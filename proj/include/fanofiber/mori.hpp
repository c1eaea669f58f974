#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "fanofiber/error.hpp"
#include "fanofiber/exact_lp.hpp"
#include "fanofiber/lattice.hpp"
#include "fanofiber/polytope.hpp"
#include "fanofiber/toric.hpp"

namespace fanofiber {

/// Minimal set of vertices not lying on a common face.
struct PrimitiveCollection {
  VertexSet vertices = 0;

  std::size_t size() const { return count(vertices); }
  friend bool operator==(const PrimitiveCollection&, const PrimitiveCollection&) = default;
};

enum class ContractionKind { MoriFibration, Divisorial, Flipping };

constexpr std::string_view to_string(ContractionKind k) {
  switch (k) {
    case ContractionKind::MoriFibration: return "MoriFibration";
    case ContractionKind::Divisorial: return "Divisorial";
    case ContractionKind::Flipping: return "Flipping";
  }
  return "?";
}

/// x_1 + ... + x_k = b_1 y_1 + ... + b_h y_h with the y_i generating the focus.
struct PrimitiveRelation {
  PrimitiveCollection collection;
  Face focus;
  std::vector<std::size_t> focus_generators;
  std::vector<std::int64_t> coefficients;
  std::int64_t degree = 0;
  std::vector<std::int64_t> cls;  // +1 on the collection, -b_i on focus generators

  std::size_t length() const { return collection.size(); }
};

namespace detail {

inline std::unordered_set<VertexSet> all_faces_simplicial(const Polytope& p) {
  std::unordered_set<VertexSet> faces;
  for (const auto& f : p.facets()) {
    // every subset of a simplicial facet is a face
    VertexSet s = f.vertices;
    for (VertexSet sub = s;; sub = (sub - 1) & s) {
      faces.insert(sub);
      if (sub == 0) break;
    }
  }
  return faces;
}

}  // namespace detail

/// All primitive collections, ordered by size and then by vertex indices.
inline std::vector<PrimitiveCollection> primitive_collections(const Polytope& p) {
  if (!is_smooth(p)) throw Error(ErrorCode::NotSmooth);
  const std::size_t m = p.num_vertices();
  const auto faces = detail::all_faces_simplicial(p);

  std::vector<std::vector<VertexSet>> by_size(p.dim() + 1);
  for (auto f : faces) by_size[count(f)].push_back(f);

  std::vector<PrimitiveCollection> out;
  for (std::size_t s = 2; s <= p.dim() + 1; ++s) {
    std::vector<VertexSet> found;
    for (auto base : by_size[s - 1]) {
      const std::size_t top = base ? 63 - static_cast<std::size_t>(std::countl_zero(base)) : 0;
      for (std::size_t v = base ? top + 1 : 0; v < m; ++v) {
        const VertexSet cand = base | bit(v);
        if (faces.count(cand)) continue;
        bool minimal = true;
        for (auto x : indices(cand))
          if (!faces.count(cand & ~bit(x))) {
            minimal = false;
            break;
          }
        if (minimal) found.push_back(cand);
      }
    }
    std::sort(found.begin(), found.end(), [](VertexSet a, VertexSet b) {
      return indices(a) < indices(b);
    });
    for (auto c : found) out.push_back({c});
  }
  return out;
}

inline PrimitiveRelation primitive_relation(const Polytope& p, const PrimitiveCollection& c) {
  if (!is_smooth(p)) throw Error(ErrorCode::NotSmooth);
  const std::size_t m = p.num_vertices();
  PrimitiveRelation r;
  r.collection = c;
  r.cls.assign(m, 0);
  Point sum(p.dim(), 0);
  for (auto i : indices(c.vertices)) {
    sum = sum + p.vertex(i);
    r.cls[i] += 1;
  }
  r.focus = minimal_face_containing(p, sum);
  r.focus_generators = indices(r.focus.vertices);
  std::int64_t total = 0;
  if (!r.focus.is_zero()) {
    std::optional<std::vector<std::int64_t>> b;
    try {
      b = positive_integer_combination(sum, p.points(r.focus.vertices));
    } catch (const Error& e) {
      throw Error(ErrorCode::NonIntegralRelation, e.what());
    }
    if (!b) throw Error(ErrorCode::NonIntegralRelation, "sum outside its focus");
    r.coefficients = *b;
    for (std::size_t j = 0; j < r.focus_generators.size(); ++j) {
      r.cls[r.focus_generators[j]] -= r.coefficients[j];
      total += r.coefficients[j];
    }
  }
  r.degree = static_cast<std::int64_t>(c.size()) - total;
  return r;
}

inline std::vector<PrimitiveRelation> primitive_relations(const Polytope& p) {
  std::vector<PrimitiveRelation> out;
  for (const auto& c : primitive_collections(p)) out.push_back(primitive_relation(p, c));
  return out;
}

inline ContractionKind classify_contraction(const PrimitiveRelation& r) {
  if (r.focus.is_zero()) return ContractionKind::MoriFibration;
  if (r.focus_generators.size() == 1) return ContractionKind::Divisorial;
  return ContractionKind::Flipping;
}

namespace detail {

inline bool positively_proportional(const std::vector<std::int64_t>& a,
                                    const std::vector<std::int64_t>& b) {
  std::size_t i = 0;
  while (i < a.size() && a[i] == 0) ++i;
  if (i == a.size()) return is_zero(b);
  if (b[i] == 0 || (a[i] > 0) != (b[i] > 0)) return false;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (static_cast<__int128>(a[j]) * b[i] != static_cast<__int128>(b[j]) * a[i]) return false;
  return true;
}

}  // namespace detail

/// Whether the relation's class spans an extremal ray of the cone generated
/// by the classes of all primitive relations (taken as NE(F)).
inline bool is_extremal(const Polytope& /*p*/, const PrimitiveRelation& r,
                        const std::vector<PrimitiveRelation>& all) {
  const bool listed = std::any_of(all.begin(), all.end(), [&](const PrimitiveRelation& x) {
    return x.collection == r.collection;
  });
  if (!listed) throw Error(ErrorCode::IncompleteRelationList);
  std::vector<std::vector<std::int64_t>> others;
  for (const auto& x : all)
    if (!detail::positively_proportional(x.cls, r.cls)) others.push_back(x.cls);
  return !cone_membership(others, r.cls).has_value();
}

/// Every k-subset of vertices lies on a common proper face.
inline bool is_k_neighbourly(const Polytope& p, std::size_t k) {
  const std::size_t m = p.num_vertices();
  if (k == 0 || k > m) return true;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (!p.on_common_face(make_set(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace fanofiber

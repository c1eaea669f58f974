#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fanofiber/error.hpp"
#include "fanofiber/fibrelike.hpp"
#include "fanofiber/io.hpp"
#include "fanofiber/mori.hpp"
#include "fanofiber/polytope.hpp"
#include "fanofiber/symmetry.hpp"
#include "fanofiber/toric.hpp"

namespace fanofiber {

/// Value of a report field: not evaluated, a value, or the error code that
/// prevented it.
template <class T>
struct Field {
  std::optional<T> value;
  std::optional<ErrorCode> error;

  bool evaluated() const { return value.has_value() || error.has_value(); }
  bool is_true() const { return value.has_value() && static_cast<bool>(*value); }
  friend bool operator==(const Field&, const Field&) = default;
};

struct FactorSummary {
  std::string description;
  std::size_t dim = 0;
  std::size_t num_vertices = 0;
  std::size_t multiplicity = 1;
  friend bool operator==(const FactorSummary&, const FactorSummary&) = default;
};

struct FanoReport {
  std::optional<std::int64_t> id;
  std::optional<std::string> name;
  std::size_t dim = 0;
  std::size_t num_vertices = 0;
  Field<bool> smooth, reflexive, terminal, simplicial;
  Field<bool> centrally_symmetric, two_neighbourly, vertex_transitive;
  Field<std::size_t> t, k;
  Field<bool> fibre_like;
  Field<std::size_t> picard_rank;
  Field<std::int64_t> fano_index;
  Field<std::vector<FactorSummary>> factors;
  Field<std::string> recognized;
};

enum class Predicate {
  Smooth,
  Reflexive,
  Terminal,
  Simplicial,
  CentrallySymmetric,
  TwoNeighbourly,
  VertexTransitive,
  FibreLike,
  Recognize,
};

inline const std::vector<std::pair<std::string_view, Predicate>>& predicate_names() {
  static const std::vector<std::pair<std::string_view, Predicate>> names = {
      {"smooth", Predicate::Smooth},
      {"reflexive", Predicate::Reflexive},
      {"terminal", Predicate::Terminal},
      {"simplicial", Predicate::Simplicial},
      {"centrally_symmetric", Predicate::CentrallySymmetric},
      {"two_neighbourly", Predicate::TwoNeighbourly},
      {"vertex_transitive", Predicate::VertexTransitive},
      {"fibre_like", Predicate::FibreLike},
      {"recognize", Predicate::Recognize},
  };
  return names;
}

inline std::string_view to_string(Predicate p) {
  for (const auto& [n, q] : predicate_names())
    if (q == p) return n;
  return "?";
}

inline Predicate parse_predicate(std::string_view s) {
  for (const auto& [n, q] : predicate_names())
    if (n == s) return q;
  throw Error(ErrorCode::ParseError, "unknown predicate: " + std::string(s));
}

/// Comma-separated list; "all" expands to every predicate.
inline std::vector<Predicate> parse_predicates(std::string_view list) {
  std::vector<Predicate> out;
  std::size_t i = 0;
  while (i <= list.size()) {
    auto j = list.find(',', i);
    if (j == std::string_view::npos) j = list.size();
    const auto tok = list.substr(i, j - i);
    if (tok == "all") {
      for (const auto& [n, q] : predicate_names()) out.push_back(q);
    } else if (!tok.empty()) {
      out.push_back(parse_predicate(tok));
    }
    i = j + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Predicate> all_predicates() { return parse_predicates("all"); }

namespace detail {

template <class T, class F>
void fill(Field<T>& field, F&& f) {
  try {
    field.value = f();
  } catch (const Error& e) {
    field.error = e.code();
  }
}

inline bool wants(const std::vector<Predicate>& preds, Predicate p) {
  return std::find(preds.begin(), preds.end(), p) != preds.end();
}

}  // namespace detail

/// The toric flags (smooth, reflexive, terminal, simplicial, Picard rank,
/// index) are always filled; the rest only when requested.
inline FanoReport analyze_record(const PolytopeRecord& rec, const std::vector<Predicate>& preds) {
  using detail::fill;
  using detail::wants;
  FanoReport r;
  r.id = rec.id;
  r.name = rec.name;
  r.dim = rec.dim;
  r.num_vertices = rec.vertices.size();
  const Polytope p = rec.polytope();

  fill(r.smooth, [&] { return is_smooth(p); });
  fill(r.reflexive, [&] { return is_reflexive(p); });
  fill(r.terminal, [&] { return is_terminal(p); });
  fill(r.simplicial, [&] { return is_simplicial(p); });
  fill(r.picard_rank, [&] { return picard_rank(p); });
  fill(r.fano_index, [&] { return fano_index(p); });

  if (wants(preds, Predicate::CentrallySymmetric))
    fill(r.centrally_symmetric, [&] { return is_centrally_symmetric(p); });
  if (wants(preds, Predicate::TwoNeighbourly))
    fill(r.two_neighbourly, [&] { return is_k_neighbourly(p, 2); });

  const bool need_group = wants(preds, Predicate::VertexTransitive) || wants(preds, Predicate::FibreLike);
  if (need_group) {
    try {
      const auto group = automorphism_group(p);
      const auto s = symmetry_report(group);
      r.t.value = s.t;
      r.k.value = s.k;
      r.vertex_transitive.value = s.vertex_transitive;
      if (wants(preds, Predicate::FibreLike))
        fill(r.fibre_like, [&] { return is_fibre_like(p, group).fibre_like; });
    } catch (const Error& e) {
      r.t.error = r.k.error = r.vertex_transitive.error = r.fibre_like.error = e.code();
    }
  }

  if (wants(preds, Predicate::Recognize)) {
    try {
      const auto rec_list = recognize(p);
      std::vector<FactorSummary> fs;
      for (const auto& x : rec_list)
        fs.push_back({x.family.name(), x.dim, x.num_vertices, x.multiplicity});
      r.factors.value = std::move(fs);
      r.recognized.value = describe(rec_list);
    } catch (const Error& e) {
      r.factors.error = r.recognized.error = e.code();
    }
  }
  return r;
}

/// Whether the record satisfies the predicate; unevaluated or failed counts
/// as false. Recognition succeeds when every factor is a named family.
inline bool satisfies(const FanoReport& r, Predicate p) {
  switch (p) {
    case Predicate::Smooth: return r.smooth.is_true();
    case Predicate::Reflexive: return r.reflexive.is_true();
    case Predicate::Terminal: return r.terminal.is_true();
    case Predicate::Simplicial: return r.simplicial.is_true();
    case Predicate::CentrallySymmetric: return r.centrally_symmetric.is_true();
    case Predicate::TwoNeighbourly: return r.two_neighbourly.is_true();
    case Predicate::VertexTransitive: return r.vertex_transitive.is_true();
    case Predicate::FibreLike: return r.fibre_like.is_true();
    case Predicate::Recognize:
      return r.factors.value &&
             std::none_of(r.factors.value->begin(), r.factors.value->end(),
                          [](const FactorSummary& f) { return f.description == "?"; });
  }
  return false;
}

struct TableRow {
  std::size_t dim = 0;
  std::size_t num_vertices = 0;
  std::string description;
  std::optional<std::int64_t> id;
};

struct CorpusReport {
  std::vector<Predicate> predicates;
  std::vector<FanoReport> records;
  std::vector<std::pair<Predicate, std::size_t>> summary;  // records satisfying each predicate
  std::size_t errors = 0;                                   // records with any failed field
  std::vector<TableRow> rows;  // records satisfying every requested predicate except recognize
};

/// Order used for reports: dimension, then id (missing ids last), then
/// lexicographic vertex data.
inline bool record_order(const PolytopeRecord& a, const PolytopeRecord& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.id.has_value() != b.id.has_value()) return a.id.has_value();
  if (a.id && *a.id != *b.id) return *a.id < *b.id;
  return a.vertices < b.vertices;
}

namespace detail {

inline bool any_error(const FanoReport& r) {
  return r.smooth.error || r.reflexive.error || r.terminal.error || r.simplicial.error ||
         r.centrally_symmetric.error || r.two_neighbourly.error || r.vertex_transitive.error ||
         (r.fibre_like.error && *r.fibre_like.error != ErrorCode::NotSmooth) || r.factors.error;
}

}  // namespace detail

/// Evaluates the predicates on every record with `jobs` worker threads.
/// The result does not depend on `jobs`.
inline CorpusReport classify_corpus(std::vector<PolytopeRecord> records, std::vector<Predicate> predicates,
                                    std::size_t jobs = 1) {
  std::stable_sort(records.begin(), records.end(), record_order);
  std::sort(predicates.begin(), predicates.end());
  predicates.erase(std::unique(predicates.begin(), predicates.end()), predicates.end());

  CorpusReport out;
  out.predicates = predicates;
  out.records.resize(records.size());
  std::vector<std::string> failures(records.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < records.size();) {
      try {
        out.records[i] = analyze_record(records[i], predicates);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, records.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < records.size(); ++i)
    if (!failures[i].empty()) throw Error(ErrorCode::InvariantViolation, failures[i]);

  for (auto p : predicates) {
    std::size_t n = 0;
    for (const auto& r : out.records) n += satisfies(r, p);
    out.summary.emplace_back(p, n);
  }
  for (const auto& r : out.records) {
    out.errors += detail::any_error(r);
    const bool all = std::all_of(predicates.begin(), predicates.end(), [&](Predicate p) {
      return p == Predicate::Recognize || satisfies(r, p);
    });
    if (!all) continue;
    std::string desc = r.recognized.value ? *r.recognized.value : r.name.value_or("");
    out.rows.push_back({r.dim, r.num_vertices, std::move(desc), r.id});
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

using Json = nlohmann::ordered_json;

namespace detail {

template <class T>
Json field_json(const Field<T>& f) {
  if (f.error) return Json{{"error", std::string(to_string(*f.error))}};
  if (!f.value) return nullptr;
  if constexpr (std::is_same_v<T, std::vector<FactorSummary>>) {
    Json arr = Json::array();
    for (const auto& x : *f.value)
      arr.push_back(Json{{"description", x.description},
                         {"dim", x.dim},
                         {"num_vertices", x.num_vertices},
                         {"multiplicity", x.multiplicity}});
    return arr;
  } else {
    return Json(*f.value);
  }
}

}  // namespace detail

inline Json to_json(const FanoReport& r) {
  using detail::field_json;
  Json j;
  j["id"] = r.id ? Json(*r.id) : Json(nullptr);
  j["name"] = r.name ? Json(*r.name) : Json(nullptr);
  j["dim"] = r.dim;
  j["num_vertices"] = r.num_vertices;
  j["smooth"] = field_json(r.smooth);
  j["reflexive"] = field_json(r.reflexive);
  j["terminal"] = field_json(r.terminal);
  j["simplicial"] = field_json(r.simplicial);
  j["centrally_symmetric"] = field_json(r.centrally_symmetric);
  j["two_neighbourly"] = field_json(r.two_neighbourly);
  j["vertex_transitive"] = field_json(r.vertex_transitive);
  j["t"] = field_json(r.t);
  j["k"] = field_json(r.k);
  j["fibre_like"] = field_json(r.fibre_like);
  j["picard_rank"] = field_json(r.picard_rank);
  j["fano_index"] = field_json(r.fano_index);
  j["factors"] = field_json(r.factors);
  j["recognized"] = field_json(r.recognized);
  return j;
}

inline Json to_json(const CorpusReport& c) {
  Json j;
  Json preds = Json::array();
  for (auto p : c.predicates) preds.push_back(std::string(to_string(p)));
  j["predicates"] = preds;
  Json recs = Json::array();
  for (const auto& r : c.records) recs.push_back(to_json(r));
  j["records"] = recs;
  Json summary;
  summary["records"] = c.records.size();
  for (const auto& [p, n] : c.summary) summary[std::string(to_string(p))] = n;
  summary["errors"] = c.errors;
  j["summary"] = summary;
  Json rows = Json::array();
  for (const auto& row : c.rows)
    rows.push_back(Json{{"dim", row.dim},
                        {"num_vertices", row.num_vertices},
                        {"description", row.description},
                        {"id", row.id ? Json(*row.id) : Json(nullptr)}});
  j["rows"] = rows;
  return j;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Plain text

namespace detail {

template <class T>
std::string field_text(const Field<T>& f) {
  if (f.error) return std::string(to_string(*f.error));
  if (!f.value) return "-";
  if constexpr (std::is_same_v<T, bool>) {
    return *f.value ? "yes" : "no";
  } else if constexpr (std::is_same_v<T, std::string>) {
    return *f.value;
  } else if constexpr (std::is_same_v<T, std::vector<FactorSummary>>) {
    return std::to_string(f.value->size());
  } else {
    return std::to_string(*f.value);
  }
}

}  // namespace detail

inline std::string to_text(const FanoReport& r) {
  using detail::field_text;
  std::ostringstream os;
  os << "id                  " << (r.id ? std::to_string(*r.id) : "-") << "\n"
     << "name                " << r.name.value_or("-") << "\n"
     << "dim                 " << r.dim << "\n"
     << "num_vertices        " << r.num_vertices << "\n"
     << "smooth              " << field_text(r.smooth) << "\n"
     << "reflexive           " << field_text(r.reflexive) << "\n"
     << "terminal            " << field_text(r.terminal) << "\n"
     << "simplicial          " << field_text(r.simplicial) << "\n"
     << "centrally_symmetric " << field_text(r.centrally_symmetric) << "\n"
     << "two_neighbourly     " << field_text(r.two_neighbourly) << "\n"
     << "vertex_transitive   " << field_text(r.vertex_transitive) << "\n"
     << "t                   " << field_text(r.t) << "\n"
     << "k                   " << field_text(r.k) << "\n"
     << "fibre_like          " << field_text(r.fibre_like) << "\n"
     << "picard_rank         " << field_text(r.picard_rank) << "\n"
     << "fano_index          " << field_text(r.fano_index) << "\n"
     << "recognized          " << field_text(r.recognized) << "\n";
  return os.str();
}

inline std::string to_text(const CorpusReport& c) {
  std::ostringstream os;
  os << "records " << c.records.size() << "\n";
  for (const auto& [p, n] : c.summary) os << to_string(p) << " " << n << "\n";
  os << "errors " << c.errors << "\n\n";
  os << "dim\tvertices\tdescription\tid\n";
  for (const auto& row : c.rows)
    os << row.dim << "\t" << row.num_vertices << "\t" << (row.description.empty() ? "-" : row.description)
       << "\t" << (row.id ? std::to_string(*row.id) : "-") << "\n";
  return os.str();
}

}  // namespace fanofiber

#pragma once

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fanofiber/error.hpp"
#include "fanofiber/lattice.hpp"
#include "fanofiber/polytope.hpp"

namespace fanofiber {

struct PolytopeRecord {
  std::optional<std::int64_t> id;
  std::optional<std::string> name;
  std::size_t dim = 0;
  std::vector<Point> vertices;  // canonical (lexicographic) order

  Polytope polytope() const { return Polytope::from_vertices(vertices); }

  static PolytopeRecord from_polytope(const Polytope& p, std::optional<std::int64_t> id = {},
                                      std::optional<std::string> name = {}) {
    return {id, std::move(name), p.dim(), p.vertices()};
  }

  friend bool operator==(const PolytopeRecord&, const PolytopeRecord&) = default;
};

/// Syntax error at a 1-based line.
class ParseFailure : public Error {
 public:
  ParseFailure(std::size_t line, const std::string& reason)
      : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A well-formed record whose vertices do not form a valid polytope.
class RecordInvalid : public Error {
 public:
  RecordInvalid(std::size_t record, std::size_t line, ErrorCode reason, const std::string& detail)
      : Error(ErrorCode::InvariantViolation, "record " + std::to_string(record) + " (line " +
                                                 std::to_string(line) + "): " + detail),
        record_(record), line_(line), reason_(reason) {}
  std::size_t record() const { return record_; }
  std::size_t line() const { return line_; }
  ErrorCode reason() const { return reason_; }

 private:
  std::size_t record_, line_;
  ErrorCode reason_;
};

namespace detail {

inline std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::int64_t parse_int(std::string_view tok, std::size_t line) {
  std::int64_t x = 0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, x);
  if (ec == std::errc::result_out_of_range) throw ParseFailure(line, "integer out of range: " + std::string(tok));
  if (ec != std::errc() || ptr != end) throw ParseFailure(line, "not an integer: " + std::string(tok));
  return x;
}

struct RawRecord {
  PolytopeRecord rec;
  std::size_t first_line = 0;
  bool has_dim = false;
  bool any = false;
};

inline PolytopeRecord finish_record(RawRecord& raw, std::size_t index, std::size_t line, bool require_dim) {
  if (require_dim && !raw.has_dim) throw ParseFailure(line, "record without dim line");
  if (!raw.has_dim) {
    if (raw.rec.vertices.empty()) throw ParseFailure(line, "empty block");
    raw.rec.dim = raw.rec.vertices.front().size();
  }
  try {
    const auto p = Polytope::from_vertices(raw.rec.vertices);
    raw.rec.vertices = p.vertices();
  } catch (const Error& e) {
    throw RecordInvalid(index, raw.first_line, e.code(), e.what());
  }
  return raw.rec;
}

/// Shared reader: `strict` is the repo format, otherwise the looser dump
/// convention (no header lines required, dimension taken from the rows).
inline std::vector<PolytopeRecord> parse_records(std::istream& in, bool strict) {
  std::vector<PolytopeRecord> out;
  RawRecord raw;
  std::string line;
  std::size_t lineno = 0, last_separator = 0;
  auto flush = [&](std::size_t at) {
    if (!raw.any) {
      if (strict) throw ParseFailure(at, "empty record");
      return;
    }
    out.push_back(finish_record(raw, out.size() + 1, at, strict));
    if (!strict) out.back().id = static_cast<std::int64_t>(out.size());
    raw = RawRecord{};
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv = line;
    const auto toks = split_spaces(sv);
    if (toks.empty() || toks.front().front() == '#') continue;
    if (toks.front() == "---") {
      if (toks.size() != 1) throw ParseFailure(lineno, "trailing text after separator");
      flush(lineno);
      last_separator = lineno;
      continue;
    }
    if (!raw.any) raw.first_line = lineno;
    raw.any = true;
    const auto key = toks.front();
    if (key == "v") {
      if (!raw.has_dim && strict) throw ParseFailure(lineno, "vertex before dim");
      Point v;
      for (std::size_t i = 1; i < toks.size(); ++i) v.push_back(parse_int(toks[i], lineno));
      const std::size_t want = raw.has_dim ? raw.rec.dim
                               : raw.rec.vertices.empty() ? v.size()
                                                          : raw.rec.vertices.front().size();
      if (v.size() != want || v.empty())
        throw ParseFailure(lineno, "expected " + std::to_string(want) + " coordinates, got " +
                                       std::to_string(v.size()));
      raw.rec.vertices.push_back(std::move(v));
    } else if (key == "dim") {
      if (raw.has_dim) throw ParseFailure(lineno, "duplicate dim");
      if (!raw.rec.vertices.empty()) throw ParseFailure(lineno, "dim after vertices");
      if (toks.size() != 2) throw ParseFailure(lineno, "dim takes one integer");
      const auto d = parse_int(toks[1], lineno);
      if (d < 1) throw ParseFailure(lineno, "dim must be positive");
      raw.rec.dim = static_cast<std::size_t>(d);
      raw.has_dim = true;
    } else if (key == "id") {
      if (raw.rec.id) throw ParseFailure(lineno, "duplicate id");
      if (toks.size() != 2) throw ParseFailure(lineno, "id takes one integer");
      raw.rec.id = parse_int(toks[1], lineno);
    } else if (key == "name") {
      if (raw.rec.name) throw ParseFailure(lineno, "duplicate name");
      const auto pos = sv.find("name") + 4;
      std::string_view rest = sv.substr(pos);
      while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
      while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t')) rest.remove_suffix(1);
      if (rest.empty()) throw ParseFailure(lineno, "empty name");
      raw.rec.name = std::string(rest);
    } else {
      throw ParseFailure(lineno, "unknown keyword: " + std::string(key));
    }
  }
  if (raw.any)
    flush(lineno + 1);
  else if (strict && last_separator)
    throw ParseFailure(last_separator, "separator without a following record");
  return out;
}

}  // namespace detail

inline std::vector<PolytopeRecord> parse_polytope_text(const std::string& text) {
  std::istringstream in(text);
  return detail::parse_records(in, true);
}

inline std::vector<PolytopeRecord> read_polytope_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return detail::parse_records(in, true);
}

inline constexpr std::string_view kFileHeader = "# fanofiber polytope file\n";

inline std::string format_records(const std::vector<PolytopeRecord>& records) {
  std::string s(kFileHeader);
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (r) s += "---\n";
    if (rec.id) s += "id " + std::to_string(*rec.id) + "\n";
    if (rec.name) s += "name " + *rec.name + "\n";
    s += "dim " + std::to_string(rec.dim) + "\n";
    for (const auto& v : rec.vertices) {
      s += "v";
      for (auto x : v) s += " " + std::to_string(x);
      s += "\n";
    }
  }
  return s;
}

inline void write_polytope_file(const std::vector<PolytopeRecord>& records,
                                const std::filesystem::path& path) {
  const std::string text = format_records(records);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

/// Reads an external dump of smooth Fano polytopes: blocks of `v` rows
/// separated by `---` (header lines optional). The 1-based block index
/// becomes the id.
inline std::vector<PolytopeRecord> import_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return detail::parse_records(in, false);
}

#ifndef FANOFIBER_FIXTURE_DIR
#define FANOFIBER_FIXTURE_DIR "fixtures"
#endif

inline std::filesystem::path fixture_directory() {
  if (const char* env = std::getenv("FANOFIBER_FIXTURES"); env && *env) return env;
  return FANOFIBER_FIXTURE_DIR;
}

/// All `.poly` files under a path (a single file, or a directory scanned in
/// sorted filename order).
inline std::vector<std::filesystem::path> polytope_files(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) throw Error(ErrorCode::IoError, "no such path: " + path.string());
  if (!fs::is_directory(path)) return {path};
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(path))
    if (e.is_regular_file() && e.path().extension() == ".poly") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

inline std::vector<PolytopeRecord> read_corpus(const std::filesystem::path& path) {
  std::vector<PolytopeRecord> all;
  for (const auto& f : polytope_files(path)) {
    auto recs = read_polytope_file(f);
    all.insert(all.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
  }
  return all;
}

}  // namespace fanofiber

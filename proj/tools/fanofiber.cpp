// Command-line front end.

#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fanofiber/fanofiber.hpp"

namespace ff = fanofiber;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

ff::PolytopeRecord single_record(const std::string& path) {
  auto recs = ff::read_polytope_file(path);
  if (recs.size() != 1)
    throw ff::Error(ff::ErrorCode::ParseError,
                    path + ": expected exactly one record, found " + std::to_string(recs.size()));
  return recs.front();
}

void emit(const std::vector<ff::PolytopeRecord>& recs, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << ff::format_records(recs);
  else
    ff::write_polytope_file(recs, out);
}

void print_map(const ff::LatticeMap& m) {
  std::cout << "matrix\n";
  for (std::size_t i = 0; i < m.matrix.rows(); ++i) {
    for (std::size_t j = 0; j < m.matrix.cols(); ++j) std::cout << (j ? " " : "") << m.matrix(i, j);
    std::cout << "\n";
  }
  std::cout << "permutation";
  for (auto x : m.permutation) std::cout << " " << x;
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry and fibre-likeness of smooth toric Fano polytopes"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "report on every record of a polytope file");
  std::string analyze_file, analyze_expect, analyze_preds = "all";
  bool analyze_json = false;
  analyze->add_option("file", analyze_file)->required();
  analyze->add_flag("--json", analyze_json, "JSON output");
  analyze->add_option("--predicate", analyze_preds, "predicates to evaluate (comma separated)");
  analyze->add_option("--expect", analyze_expect,
                      "exit 1 unless the single record satisfies these predicates");

  // construct
  auto* construct = app.add_subcommand("construct", "build a named polytope");
  construct->require_subcommand(1);
  std::string out_file, rec_name;
  std::optional<std::int64_t> rec_id;
  auto common = [&](CLI::App* c) {
    c->add_option("-o,--output", out_file, "output file (stdout when omitted)");
    c->add_option("--name", rec_name, "record name");
    c->add_option("--id", rec_id, "record id");
  };
  std::size_t n_arg = 0, k_arg = 0;
  std::string file_a, file_b;
  auto* c_simplex = construct->add_subcommand("simplex", "P^n");
  c_simplex->add_option("n", n_arg)->required();
  auto* c_delpezzo = construct->add_subcommand("delpezzo", "V_d, d even");
  c_delpezzo->add_option("d", n_arg)->required();
  auto* c_klyachko = construct->add_subcommand("klyachko", "W^k_d, (k-1) | d");
  c_klyachko->add_option("k", k_arg)->required();
  c_klyachko->add_option("d", n_arg)->required();
  auto* c_power = construct->add_subcommand("power", "n-fold free sum of the record in a file");
  c_power->add_option("file", file_a)->required();
  c_power->add_option("n", n_arg)->required();
  auto* c_freesum = construct->add_subcommand("freesum", "free sum of two records");
  c_freesum->add_option("a", file_a)->required();
  c_freesum->add_option("b", file_b)->required();
  for (auto* c : {c_simplex, c_delpezzo, c_klyachko, c_power, c_freesum}) common(c);

  // classify
  auto* classify = app.add_subcommand("classify", "classify a polytope file or directory");
  std::string classify_path, classify_preds = "fibre_like,recognize";
  bool classify_json = false;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  classify->add_option("path", classify_path)->required();
  classify->add_option("--predicate", classify_preds, "predicates (comma separated)");
  classify->add_flag("--json", classify_json, "JSON output");
  classify->add_option("-j,--jobs", jobs, "worker threads");

  // isom
  auto* isom = app.add_subcommand("isom", "lattice equivalence of two polytopes");
  std::string isom_a, isom_b;
  isom->add_option("a", isom_a)->required();
  isom->add_option("b", isom_b)->required();

  // autgroup
  auto* autgroup = app.add_subcommand("autgroup", "automorphism group of a polytope");
  std::string aut_file;
  bool aut_orbits = false;
  autgroup->add_option("file", aut_file)->required();
  autgroup->add_flag("--orbits", aut_orbits, "list the vertex orbits");

  // import
  auto* import = app.add_subcommand("import", "convert an external dump (block index becomes id)");
  std::string import_in, import_out;
  import->add_option("dump", import_in)->required();
  import->add_option("-o,--output", import_out, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*analyze) {
      const auto recs = ff::read_polytope_file(analyze_file);
      auto preds = ff::parse_predicates(analyze_preds);
      const auto expect = ff::parse_predicates(analyze_expect);
      if (!expect.empty() && recs.size() != 1)
        throw ff::Error(ff::ErrorCode::ParseError, "--expect needs a file with exactly one record");
      preds.insert(preds.end(), expect.begin(), expect.end());
      std::sort(preds.begin(), preds.end());
      preds.erase(std::unique(preds.begin(), preds.end()), preds.end());

      std::vector<ff::FanoReport> reports;
      for (const auto& r : recs) reports.push_back(ff::analyze_record(r, preds));
      if (analyze_json) {
        ff::Json arr = ff::Json::array();
        for (const auto& r : reports) arr.push_back(ff::to_json(r));
        std::cout << ff::dump_json(reports.size() == 1 ? arr.front() : arr);
      } else {
        for (std::size_t i = 0; i < reports.size(); ++i)
          std::cout << (i ? "---\n" : "") << ff::to_text(reports[i]);
      }
      for (auto p : expect)
        if (!ff::satisfies(reports.front(), p)) {
          std::cerr << "expectation failed: " << ff::to_string(p) << "\n";
          return kFalse;
        }
      return kOk;
    }

    if (*construct) {
      std::optional<ff::Polytope> p;
      std::optional<std::string> default_name;
      if (*c_simplex) {
        p = ff::simplex(n_arg);
        default_name = "P^" + std::to_string(n_arg);
      } else if (*c_delpezzo) {
        p = ff::t_del_pezzo(n_arg);
        default_name = "V_" + std::to_string(n_arg);
      } else if (*c_klyachko) {
        p = ff::klyachko(k_arg, n_arg);
        default_name = "W^" + std::to_string(k_arg) + "_" + std::to_string(n_arg);
      } else if (*c_power) {
        if (n_arg < 1) throw ff::Error(ff::ErrorCode::IndexOutOfRange, "power needs n >= 1");
        p = ff::power(single_record(file_a).polytope(), n_arg);
      } else {
        p = ff::free_sum(single_record(file_a).polytope(), single_record(file_b).polytope());
      }
      const auto name = rec_name.empty() ? default_name : std::optional<std::string>(rec_name);
      emit({ff::PolytopeRecord::from_polytope(*p, rec_id, name)}, out_file);
      return kOk;
    }

    if (*classify) {
      const auto records = ff::read_corpus(classify_path);
      const auto report = ff::classify_corpus(records, ff::parse_predicates(classify_preds), jobs);
      std::cout << (classify_json ? ff::dump_json(ff::to_json(report)) : ff::to_text(report));
      return kOk;
    }

    if (*isom) {
      const auto a = single_record(isom_a).polytope();
      const auto b = single_record(isom_b).polytope();
      const auto m = ff::lattice_isomorphism(a, b);
      if (!m) {
        std::cout << "not equivalent\n";
        return kOk;
      }
      std::cout << "equivalent\n";
      print_map(*m);
      return kOk;
    }

    if (*autgroup) {
      const auto p = single_record(aut_file).polytope();
      const auto g = ff::automorphism_group(p);
      const auto s = ff::symmetry_report(g);
      std::cout << "order " << g.order << "\n"
                << "generators " << g.generators.size() << "\n"
                << "orbits " << s.t << "\n"
                << "fixed_dim " << g.fixed_dim << "\n"
                << "dual_fixed_dim " << g.dual_fixed_dim() << "\n"
                << "vertex_transitive " << (s.vertex_transitive ? "yes" : "no") << "\n";
      if (aut_orbits)
        for (const auto& orb : g.orbits) {
          std::cout << "orbit";
          for (auto v : orb) std::cout << " " << v;
          std::cout << "\n";
        }
      return kOk;
    }

    if (*import) {
      emit(ff::import_dump(import_in), import_out);
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

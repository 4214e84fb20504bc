// Command-line front end. Talks to the engine exclusively through the C API
// in groupscope.h; the JSON documents it prints come straight from there.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "groupscope.h"
#include "json.hpp"

namespace {

struct GroupHandle {
  gs_group* g = nullptr;
  ~GroupHandle() { gs_group_free(g); }
};

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { gs_string_free(s); }
};

int report_error(gs_status st) {
  std::cerr << "error: " << gs_last_error() << " (status " << static_cast<int>(st) << ")\n";
  return 2;
}

int build_group(const std::string& spec, bool from_cayley_file, GroupHandle& out) {
  gs_status st = from_cayley_file ? gs_group_from_cayley_file(spec.c_str(), &out.g)
                                  : gs_group_from_spec(spec.c_str(), &out.g);
  return st == GS_OK ? 0 : report_error(st);
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return false;
  }
  out << text;
  out.flush();
  if (!out) {
    std::cerr << "error: short write to " << path << "\n";
    return false;
  }
  return true;
}

// One line per report, plus hypothesis/witness details when requested.
void print_reports(const nlohmann::json& doc, bool verbose) {
  for (const auto& r : doc.at("reports")) {
    std::string status = r.at("status").get<std::string>();
    std::printf("%-28s %-6s %-14s %.1f ms\n", r.at("group").get<std::string>().c_str(),
                r.at("theorem").get<std::string>().c_str(), status.c_str(),
                r.at("wall_ms").get<double>());
    if (verbose || status == "FAILED") {
      for (const auto& h : r.at("hypotheses"))
        std::printf("    hypothesis: %s [%s]\n", h.at("name").get<std::string>().c_str(),
                    h.at("holds").get<bool>() ? "holds" : "fails");
      for (const auto& [k, v] : r.at("witnesses").items())
        std::printf("    %s = %s\n", k.c_str(), v.get<std::string>().c_str());
    }
  }
}

int count_failed(const nlohmann::json& doc) {
  int failed = 0;
  for (const auto& r : doc.at("reports"))
    if (r.at("status").get<std::string>() == "FAILED") ++failed;
  return failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-group computation engine: structure, automorphism "
               "subgroups, and statement verification"};
  app.require_subcommand(1);

  std::string spec;
  bool from_cayley = false;

  auto* info = app.add_subcommand("info", "structural summary of a group");
  info->add_option("spec", spec, "constructor expression, e.g. \"Q(8) x C(2)\"")->required();
  info->add_flag("--cayley", from_cayley, "treat spec as a path to a JSON Cayley table");

  std::string filter;
  auto* aut = app.add_subcommand("aut", "automorphism listing (optionally a subgroup of it)");
  aut->add_option("spec", spec, "constructor expression")->required();
  aut->add_flag("--cayley", from_cayley, "treat spec as a path to a JSON Cayley table");
  aut->add_option("--filter", filter,
                  "central | class:<n> | box:<M>,<N> with M,N in trivial|center|gamma<k>|full");

  std::string theorem_id;
  int n_override = 0;
  std::string json_path;
  bool list_ids = false;
  auto* check = app.add_subcommand("check", "verify one statement against a group");
  check->add_option("theorem-id", theorem_id, "statement identifier (see --list)");
  check->add_option("spec", spec, "constructor expression");
  check->add_flag("--list", list_ids, "print every known statement identifier and exit");
  check->add_flag("--cayley", from_cayley, "treat spec as a path to a JSON Cayley table");
  check->add_option("--n", n_override, "series index for the statements that take one");
  check->add_option("--json", json_path, "also write the full report JSON to this file");

  int max_order = 64;
  std::string theorems = "all";
  std::string csv_path;
  std::string corpus_json_path;
  auto* corpus = app.add_subcommand("corpus", "run checkers across the built-in catalog");
  corpus->add_option("--max-order", max_order, "largest group order to include (default 64)");
  corpus->add_option("--theorems", theorems, "comma-separated ids, or 'all' (default)");
  corpus->add_option("--json", corpus_json_path, "write the report JSON to this file");
  corpus->add_option("--csv", csv_path, "write the report CSV to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0; every usage problem exits 2
  }

  if (info->parsed()) {
    GroupHandle g;
    if (int rc = build_group(spec, from_cayley, g)) return rc;
    OwnedString out;
    gs_status st = gs_group_info_json(g.g, &out.s);
    if (st != GS_OK) return report_error(st);
    std::fputs(out.s, stdout);
    return 0;
  }

  if (aut->parsed()) {
    GroupHandle g;
    if (int rc = build_group(spec, from_cayley, g)) return rc;
    OwnedString out;
    gs_status st = gs_group_aut_json(g.g, filter.c_str(), &out.s);
    if (st != GS_OK) return report_error(st);
    std::fputs(out.s, stdout);
    return 0;
  }

  if (check->parsed()) {
    if (list_ids) {
      std::string ids = gs_theorem_ids();
      std::replace(ids.begin(), ids.end(), ',', '\n');
      std::printf("%s\n", ids.c_str());
      return 0;
    }
    if (theorem_id.empty() || spec.empty()) {
      std::fputs("check needs a theorem-id and a spec (or --list)\n", stderr);
      return 2;
    }
    GroupHandle g;
    if (int rc = build_group(spec, from_cayley, g)) return rc;
    OwnedString out;
    gs_status st = gs_check_json(g.g, spec.c_str(), theorem_id.c_str(), n_override, &out.s);
    if (st != GS_OK) return report_error(st);
    nlohmann::json doc = nlohmann::json::parse(out.s);
    print_reports(doc, /*verbose=*/true);
    if (!json_path.empty() && !write_file(json_path, out.s)) return 2;
    return count_failed(doc) > 0 ? 1 : 0;
  }

  if (corpus->parsed()) {
    OwnedString out_json;
    OwnedString out_csv;
    int any_failed = 0;
    gs_status st = gs_corpus_json(max_order, theorems == "all" ? nullptr : theorems.c_str(),
                                  &out_json.s, &out_csv.s, &any_failed);
    if (st != GS_OK) return report_error(st);
    nlohmann::json doc = nlohmann::json::parse(out_json.s);
    print_reports(doc, /*verbose=*/false);
    const auto& reports = doc.at("reports");
    int failed = count_failed(doc);
    int na = 0;
    for (const auto& r : reports)
      if (r.at("status").get<std::string>() == "NOT-APPLICABLE") ++na;
    std::printf("%zu reports: %zu OK, %d NOT-APPLICABLE, %d FAILED\n",
                static_cast<size_t>(reports.size()),
                static_cast<size_t>(reports.size()) - na - failed, na, failed);
    if (!corpus_json_path.empty() && !write_file(corpus_json_path, out_json.s)) return 2;
    if (!csv_path.empty() && !write_file(csv_path, out_csv.s)) return 2;
    return any_failed ? 1 : 0;
  }

  return 2;
}

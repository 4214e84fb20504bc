#include "groupscope.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "groupscope/abelian.hpp"
#include "groupscope/aut.hpp"
#include "groupscope/catalog.hpp"
#include "groupscope/errors.hpp"
#include "groupscope/group.hpp"
#include "groupscope/io.hpp"
#include "groupscope/theorems.hpp"
#include "json.hpp"

using nlohmann::json;

struct gs_group {
  groupscope::GroupPtr group;
  groupscope::GroupSpec spec;  // empty factor list when loaded from a table
  std::string name;
};

namespace {

std::string& tl_error() {
  thread_local std::string err;
  return err;
}

gs_status map_code(groupscope::Err code) {
  using groupscope::Err;
  switch (code) {
    case Err::BadParameter:
    case Err::ParseError:
      return GS_ERR_BAD_PARAMETER;
    case Err::NotAGroup:
      return GS_ERR_NOT_A_GROUP;
    case Err::OrderCapExceeded:
      return GS_ERR_ORDER_CAP;
    case Err::IoError:
      return GS_ERR_IO;
    case Err::SchemaError:
      return GS_ERR_SCHEMA;
    case Err::Internal:
      return GS_ERR_INTERNAL;
    default:
      return GS_ERR_DOMAIN;
  }
}

template <typename F>
gs_status guarded(F&& body) {
  tl_error().clear();
  try {
    body();
    return GS_OK;
  } catch (const groupscope::Error& e) {
    tl_error() = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    tl_error() = "out of memory";
    return GS_ERR_OOM;
  } catch (const std::exception& e) {
    tl_error() = e.what();
    return GS_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json invariants_json(const groupscope::Subgroup& s) {
  try {
    groupscope::AbelianPInvariants inv = groupscope::abelian_invariants(s);
    json j;
    j["prime"] = inv.prime;
    j["exponents"] = inv.exponents;
    return j;
  } catch (const groupscope::Error&) {
    return nullptr;  // not an abelian p-group; invariants undefined here
  }
}

// gamma_1 ... gamma_t with gamma_t the stable term. Chains on groups within
// the order cap stabilize well before twelve steps.
std::vector<groupscope::Subgroup> stabilized_series(const groupscope::GroupPtr& g) {
  std::vector<groupscope::Subgroup> s = groupscope::lower_central_series(g, 12);
  size_t t = 1;
  while (t < s.size() && s[t].order() != s[t - 1].order()) ++t;
  s.erase(s.begin() + static_cast<long>(t), s.end());
  return s;
}

groupscope::Subgroup parse_subgroup_token(const groupscope::GroupPtr& g, const std::string& tok) {
  if (tok == "trivial") return groupscope::trivial_subgroup(g);
  if (tok == "center") return groupscope::center(g);
  if (tok == "full") return groupscope::full_subgroup(g);
  if (tok.rfind("gamma", 0) == 0) {
    const std::string num = tok.substr(5);
    if (!num.empty() && num.find_first_not_of("0123456789") == std::string::npos) {
      int k = std::atoi(num.c_str());
      if (k >= 1 && k <= 32) return groupscope::lower_central_series(g, k).back();
    }
  }
  groupscope::fail(groupscope::Err::BadParameter,
                   "unknown subgroup token '" + tok + "' (expected trivial|center|gamma<k>|full)");
}

std::vector<groupscope::Automorphism> run_filter(const groupscope::GroupPtr& g,
                                                 const std::string& filter) {
  const groupscope::Limits& lim = groupscope::default_limits();
  if (filter.empty() || filter == "full") return groupscope::automorphism_group(g, lim);
  if (filter == "central") return groupscope::autcent(g, lim);
  if (filter.rfind("class:", 0) == 0) {
    const std::string num = filter.substr(6);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
      groupscope::fail(groupscope::Err::BadParameter, "class filter needs a number: " + filter);
    return groupscope::aut_class_preserving(g, std::atoi(num.c_str()), lim);
  }
  if (filter.rfind("box:", 0) == 0) {
    const std::string rest = filter.substr(4);
    const size_t comma = rest.find(',');
    if (comma == std::string::npos)
      groupscope::fail(groupscope::Err::BadParameter,
                       "box filter needs two subgroup tokens: " + filter);
    groupscope::Subgroup m = parse_subgroup_token(g, rest.substr(0, comma));
    groupscope::Subgroup n = parse_subgroup_token(g, rest.substr(comma + 1));
    return groupscope::aut_box(g, m, n, lim);
  }
  groupscope::fail(groupscope::Err::BadParameter, "unknown filter '" + filter + "'");
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string piece = text.substr(pos, comma - pos);
    const size_t a = piece.find_first_not_of(" \t");
    const size_t b = piece.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(piece.substr(a, b - a + 1));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

extern "C" {

const char* gs_last_error(void) { return tl_error().c_str(); }

const char* gs_version(void) { return "1.0.0"; }

gs_status gs_group_from_spec(const char* spec, gs_group** out) {
  return guarded([&] {
    if (!spec || !out)
      groupscope::fail(groupscope::Err::BadParameter, "spec and out must be non-NULL");
    auto* handle = new gs_group;
    try {
      handle->spec = groupscope::parse_spec(spec);
      handle->group = groupscope::construct(handle->spec, groupscope::default_limits());
      handle->name = groupscope::print_spec(handle->spec);
    } catch (...) {
      delete handle;
      throw;
    }
    *out = handle;
  });
}

gs_status gs_group_from_cayley_file(const char* path, gs_group** out) {
  return guarded([&] {
    if (!path || !out)
      groupscope::fail(groupscope::Err::BadParameter, "path and out must be non-NULL");
    groupscope::LoadedGroup loaded = groupscope::load_cayley(path, groupscope::default_limits());
    auto* handle = new gs_group;
    handle->group = std::move(loaded.group);
    handle->name = std::string("cayley:") + path;
    *out = handle;
  });
}

gs_status gs_group_from_cayley_json(const char* json_text, gs_group** out) {
  return guarded([&] {
    if (!json_text || !out)
      groupscope::fail(groupscope::Err::BadParameter, "json_text and out must be non-NULL");
    groupscope::LoadedGroup loaded =
        groupscope::parse_cayley(json_text, groupscope::default_limits());
    auto* handle = new gs_group;
    handle->group = std::move(loaded.group);
    handle->name = "(loaded)";
    *out = handle;
  });
}

void gs_group_free(gs_group* g) { delete g; }

int gs_group_order(const gs_group* g) { return g && g->group ? g->group->order() : 0; }

gs_status gs_group_info_json(const gs_group* g, char** out_json) {
  return guarded([&] {
    if (!g || !g->group || !out_json)
      groupscope::fail(groupscope::Err::BadParameter, "group and out_json must be non-NULL");
    const groupscope::GroupPtr& grp = g->group;
    const groupscope::Limits& lim = groupscope::default_limits();

    json doc;
    doc["schema"] = 1;
    doc["spec"] = g->name;
    doc["order"] = grp->order();
    doc["abelian"] = grp->is_abelian();
    doc["exponent"] = grp->exponent();

    std::optional<int> cls = groupscope::nilpotency_class(grp);
    doc["nilpotency_class"] = cls ? json(*cls) : json(nullptr);

    groupscope::Subgroup z = groupscope::center(grp);
    doc["center"] = {{"order", z.order()},
                     {"members", z.members()},
                     {"invariants", invariants_json(z)}};

    std::vector<groupscope::Subgroup> series = stabilized_series(grp);
    json series_orders = json::array();
    for (const groupscope::Subgroup& s : series) series_orders.push_back(s.order());
    doc["lower_central_series_orders"] = std::move(series_orders);

    size_t last_idx = series.size() - 1;
    if (last_idx > 0 && series[last_idx].order() == 1) --last_idx;  // gamma_class for nilpotent G
    const groupscope::Subgroup& last = series[last_idx];
    doc["last_nontrivial_series_term"] = {{"index", last_idx + 1},
                                          {"order", last.order()},
                                          {"invariants", invariants_json(last)}};

    try {
      doc["purely_non_abelian"] = groupscope::purely_nonabelian_test(grp, lim).purely;
    } catch (const groupscope::Error& e) {
      if (e.code() != groupscope::Err::OrderCapExceeded) throw;
      doc["purely_non_abelian"] = nullptr;
    }

    if (!grp->labels().empty()) doc["labels"] = grp->labels();
    *out_json = dup_string(doc.dump(2) + "\n");
  });
}

gs_status gs_group_aut_json(const gs_group* g, const char* filter, char** out_json) {
  return guarded([&] {
    if (!g || !g->group || !out_json)
      groupscope::fail(groupscope::Err::BadParameter, "group and out_json must be non-NULL");
    const std::string f = filter ? filter : "";
    std::vector<groupscope::Automorphism> auts = run_filter(g->group, f);
    std::vector<std::vector<int>> images;
    images.reserve(auts.size());
    for (const groupscope::Automorphism& a : auts) images.push_back(a.image);
    std::sort(images.begin(), images.end());

    json doc;
    doc["schema"] = 1;
    doc["spec"] = g->name;
    doc["filter"] = f.empty() ? "full" : f;
    doc["count"] = images.size();
    doc["automorphisms"] = images;
    *out_json = dup_string(doc.dump(2) + "\n");
  });
}

gs_status gs_check_json(const gs_group* g, const char* spec_name, const char* theorem_id,
                        int n, char** out_json) {
  return guarded([&] {
    if (!g || !g->group || !theorem_id || !out_json)
      groupscope::fail(groupscope::Err::BadParameter,
                       "group, theorem_id and out_json must be non-NULL");
    const std::string id = theorem_id;
    const auto& ids = groupscope::all_theorem_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
      groupscope::fail(groupscope::Err::BadParameter, "unknown theorem id " + id);

    groupscope::CatalogEntry entry;
    entry.name = (spec_name && *spec_name) ? spec_name : g->name;
    entry.spec = g->spec;
    entry.group = g->group;

    std::optional<int> n_override;
    if (n > 0) n_override = n;
    std::vector<groupscope::TheoremReport> reports =
        groupscope::run_checks_for_group(entry, id, n_override, groupscope::default_limits());
    *out_json = dup_string(groupscope::reports_to_json(reports));
  });
}

gs_status gs_corpus_json(int max_order, const char* theorem_ids, char** out_json,
                         char** out_csv, int* out_any_failed) {
  return guarded([&] {
    if (max_order < 1)
      groupscope::fail(groupscope::Err::BadParameter, "max_order must be at least 1");
    groupscope::CorpusOptions opt;
    opt.max_order = max_order;
    if (!theorem_ids || std::string(theorem_ids) == "all")
      opt.theorem_ids = groupscope::all_theorem_ids();
    else
      opt.theorem_ids = split_ids(theorem_ids);

    std::vector<groupscope::TheoremReport> reports =
        groupscope::run_corpus(opt, groupscope::default_limits());
    if (out_json) *out_json = dup_string(groupscope::reports_to_json(reports));
    if (out_csv) *out_csv = dup_string(groupscope::reports_to_csv(reports));
    if (out_any_failed) *out_any_failed = groupscope::any_failed(reports) ? 1 : 0;
  });
}

const char* gs_theorem_ids(void) {
  static const std::string joined = [] {
    std::string s;
    for (const std::string& id : groupscope::all_theorem_ids()) {
      if (!s.empty()) s += ",";
      s += id;
    }
    return s;
  }();
  return joined.c_str();
}

void gs_string_free(char* s) { std::free(s); }

}  // extern "C"

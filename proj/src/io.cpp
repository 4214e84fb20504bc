#include "groupscope/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace groupscope {

namespace {

using nlohmann::json;

LoadedGroup from_json(const json& doc, const Limits& lim) {
  if (!doc.is_object()) fail(Err::SchemaError, "top-level value must be an object");
  if (!doc.contains("order") || !doc["order"].is_number_integer())
    fail(Err::SchemaError, "missing integer field \"order\"");
  const long long order = doc["order"].get<long long>();
  if (order < 1) fail(Err::SchemaError, "\"order\" must be positive");
  if (!doc.contains("table") || !doc["table"].is_array())
    fail(Err::SchemaError, "missing array field \"table\"");

  const json& rows = doc["table"];
  if (static_cast<long long>(rows.size()) != order)
    fail(Err::SchemaError, "\"table\" must have exactly \"order\" rows");
  std::vector<std::vector<int>> table(static_cast<size_t>(order));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || static_cast<long long>(rows[i].size()) != order)
      fail(Err::SchemaError, "row " + std::to_string(i) + " is not an array of length \"order\"");
    table[i].reserve(static_cast<size_t>(order));
    for (const json& cell : rows[i]) {
      if (!cell.is_number_integer())
        fail(Err::SchemaError, "row " + std::to_string(i) + " contains a non-integer entry");
      const long long v = cell.get<long long>();
      if (v < 0 || v >= order)
        fail(Err::SchemaError, "row " + std::to_string(i) + " contains an out-of-range entry");
      table[i].push_back(static_cast<int>(v));
    }
  }

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array() || static_cast<long long>(doc["labels"].size()) != order)
      fail(Err::SchemaError, "\"labels\" must be an array of length \"order\"");
    for (const json& l : doc["labels"]) {
      if (!l.is_string()) fail(Err::SchemaError, "\"labels\" entries must be strings");
      labels.push_back(l.get<std::string>());
    }
  }

  LoadedGroup out;
  out.group = build_group(table, std::move(labels), lim, &out.relabeling);
  return out;
}

}  // namespace

LoadedGroup parse_cayley(const std::string& json_text, const Limits& lim) {
  json doc = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) fail(Err::SchemaError, "input is not valid JSON");
  return from_json(doc, lim);
}

LoadedGroup load_cayley(const std::string& path, const Limits& lim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::IoError, "cannot open " + path + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(Err::IoError, "read failure on " + path);
  return parse_cayley(buf.str(), lim);
}

std::string cayley_to_json(const GroupPtr& g) {
  const int n = g->order();
  json rows = json::array();
  for (int a = 0; a < n; ++a) {
    json row = json::array();
    for (int b = 0; b < n; ++b) row.push_back(g->mul(a, b));
    rows.push_back(std::move(row));
  }
  json doc;
  doc["order"] = n;
  doc["table"] = std::move(rows);
  if (!g->labels().empty()) doc["labels"] = g->labels();
  return doc.dump(2) + "\n";
}

void save_cayley(const GroupPtr& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Err::IoError, "cannot open " + path + " for writing");
  out << cayley_to_json(g);
  out.flush();
  if (!out) fail(Err::IoError, "write failure on " + path);
}

}  // namespace groupscope

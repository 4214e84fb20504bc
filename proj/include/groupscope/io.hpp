#pragma once

#include <string>
#include <vector>

#include "groupscope/group.hpp"

namespace groupscope {

// Result of loading a Cayley table: the group plus the permutation applied to
// move the identity to index 0 (new index -> old index; the identity
// permutation when the table already had its identity first).
struct LoadedGroup {
  GroupPtr group;
  std::vector<int> relabeling;
};

// Reads {"order": n, "table": [[...]], "labels": [...]} — labels optional.
// Malformed JSON or a table that violates the schema raises SchemaError;
// a well-formed table that is not a group raises NotAGroup; unreadable or
// unwritable files raise IoError.
LoadedGroup load_cayley(const std::string& path, const Limits& lim = default_limits());
LoadedGroup parse_cayley(const std::string& json_text, const Limits& lim = default_limits());

void save_cayley(const GroupPtr& g, const std::string& path);
std::string cayley_to_json(const GroupPtr& g);

}  // namespace groupscope

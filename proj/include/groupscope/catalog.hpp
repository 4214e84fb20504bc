#pragma once

#include <optional>
#include <string>
#include <vector>

#include "groupscope/group.hpp"

namespace groupscope {

// A parsed group specification: a direct product of named constructor calls.
// Grammar (whitespace insignificant):
//   spec   := atom ( "x" atom )*
//   atom   := NAME "(" args ")" | "(" spec ")"
// Constructors: C(n), Ab(p; e1,...,es), D(n), Q(2^k), SD(2^k), Mod(p,k), Heis(p).
// Products flatten, so the AST is a flat factor list and printing is canonical.
struct GroupSpec {
  struct Node {
    std::string ctor;
    std::vector<long long> args;
    bool operator==(const Node&) const = default;
  };
  std::vector<Node> factors;
  bool operator==(const GroupSpec&) const = default;
};

// Parses a spec string. Throws ParseError with a character position on bad
// syntax; argument validation happens at construction time.
GroupSpec parse_spec(const std::string& text);

// Canonical printer; parse_spec(print_spec(s)) == s.
std::string print_spec(const GroupSpec& spec);

// Builds the Cayley table for a spec. Throws BadParameter for invalid
// constructor arguments (e.g. Q(6), Mod(2,3)) and OrderCapExceeded when the
// resulting order is above the limit.
GroupPtr construct(const GroupSpec& spec, const Limits& lim = default_limits());
GroupPtr construct(const std::string& text, const Limits& lim = default_limits());

// Product specs only: the same group together with projections/embeddings.
// Throws BadParameter when the spec has a single factor.
ProductStructure construct_structure(const GroupSpec& spec, const Limits& lim = default_limits());

// Individual families (arguments validated as in the DSL).
GroupPtr cyclic_group(long long n, const Limits& lim = default_limits());
GroupPtr abelian_p_group(long long p, const std::vector<long long>& exps,
                         const Limits& lim = default_limits());
GroupPtr dihedral_group(long long n, const Limits& lim = default_limits());          // order 2n
GroupPtr quaternion_group(long long order, const Limits& lim = default_limits());    // 2^k, k >= 3
GroupPtr semidihedral_group(long long order, const Limits& lim = default_limits());  // 2^k, k >= 4
GroupPtr modular_group(long long p, long long k, const Limits& lim = default_limits());
GroupPtr heisenberg_group(long long p, const Limits& lim = default_limits());  // order p^3

struct CatalogEntry {
  std::string name;  // canonical spec text
  GroupSpec spec;
  GroupPtr group;
};

// The built-in verification corpus: every member with order <= max_order,
// sorted by (order, name). Chosen to cover the behaviors the check suite
// branches on: extraspecial groups, modular groups with gamma_2 strictly
// inside the center, class-3 families, elementary abelian groups, products
// with abelian factors, and one non-nilpotent group.
std::vector<CatalogEntry> builtin_catalog(int max_order, const Limits& lim = default_limits());

}  // namespace groupscope

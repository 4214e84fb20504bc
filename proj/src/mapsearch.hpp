#pragma once

#include <vector>

#include "groupscope/group.hpp"

namespace groupscope::detail {

// Backtracking search for bijective homomorphisms between two groups of equal
// order. Each domain element carries a sorted candidate-image list; the
// predicate behind those lists must be satisfied by every element of any map
// the caller wants found (candidate pruning is applied to derived images
// too). `forced` pins images up front (-1 = free). Partial maps are closed
// under products as they grow, so a finished assignment is a homomorphism by
// construction; injectivity is enforced throughout.
//
// Results are complete and sorted lexicographically by image array, or at
// most one when stop_at_first is set.
struct MapSearchProblem {
  const FiniteGroup* dom = nullptr;
  const FiniteGroup* cod = nullptr;
  std::vector<std::vector<int>> candidates;
  std::vector<int> forced;
  bool stop_at_first = false;
};

std::vector<std::vector<int>> search_bijective_homs(const MapSearchProblem& problem);

}  // namespace groupscope::detail

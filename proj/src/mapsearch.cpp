#include "mapsearch.hpp"

#include <algorithm>

namespace groupscope::detail {

namespace {

struct Searcher {
  const FiniteGroup& dom;
  const FiniteGroup& cod;
  const MapSearchProblem& prob;
  int n;
  std::vector<int> image;           // -1 = unassigned
  std::vector<unsigned char> used;  // codomain hits
  std::vector<unsigned char> cand_mask;  // flattened n x n membership
  std::vector<int> trail;           // assignment order, doubles as closure list
  std::vector<std::vector<int>> results;
  bool done = false;

  explicit Searcher(const MapSearchProblem& p)
      : dom(*p.dom), cod(*p.cod), prob(p), n(p.dom->order()) {
    image.assign(n, -1);
    used.assign(n, 0);
    cand_mask.assign(static_cast<size_t>(n) * n, 0);
    for (int x = 0; x < n; ++x)
      for (int y : p.candidates[x]) cand_mask[static_cast<size_t>(x) * n + y] = 1;
  }

  bool assign(int x, int y) {
    if (image[x] >= 0) return image[x] == y;
    if (used[y] || !cand_mask[static_cast<size_t>(x) * n + y]) return false;
    image[x] = y;
    used[y] = 1;
    trail.push_back(x);
    return true;
  }

  // Closes the partial map under products starting from trail position
  // `from`; false on contradiction.
  bool saturate(size_t from) {
    for (size_t qi = from; qi < trail.size(); ++qi) {
      const int e = trail[qi];
      for (size_t i = 0; i < trail.size(); ++i) {
        const int d = trail[i];
        if (!assign(dom.mul(e, d), cod.mul(image[e], image[d]))) return false;
        if (!assign(dom.mul(d, e), cod.mul(image[d], image[e]))) return false;
      }
    }
    return true;
  }

  void rollback(size_t mark) {
    while (trail.size() > mark) {
      const int x = trail.back();
      trail.pop_back();
      used[image[x]] = 0;
      image[x] = -1;
    }
  }

  void dfs() {
    if (done) return;
    if (static_cast<int>(trail.size()) == n) {
      results.push_back(image);
      if (prob.stop_at_first) done = true;
      return;
    }
    // Most-constrained unassigned element first (ties: smallest index).
    int best = -1;
    int best_count = n + 1;
    for (int x = 0; x < n; ++x) {
      if (image[x] >= 0) continue;
      int count = 0;
      for (int y : prob.candidates[x])
        if (!used[y] && ++count >= best_count) break;
      if (count < best_count) {
        best_count = count;
        best = x;
        if (count == 0) break;
      }
    }
    if (best_count == 0) return;
    for (int y : prob.candidates[best]) {
      if (used[y]) continue;
      const size_t mark = trail.size();
      if (assign(best, y) && saturate(mark)) dfs();
      rollback(mark);
      if (done) return;
    }
  }
};

}  // namespace

std::vector<std::vector<int>> search_bijective_homs(const MapSearchProblem& problem) {
  if (!problem.dom || !problem.cod) fail(Err::Internal, "map search with null groups");
  const int n = problem.dom->order();
  if (problem.cod->order() != n) fail(Err::ShapeMismatch, "map search needs equal orders");
  if (static_cast<int>(problem.candidates.size()) != n ||
      static_cast<int>(problem.forced.size()) != n)
    fail(Err::Internal, "map search problem shape mismatch");

  Searcher s(problem);
  if (!s.assign(FiniteGroup::identity, FiniteGroup::identity)) return {};
  bool ok = true;
  for (int x = 0; x < n && ok; ++x)
    if (problem.forced[x] >= 0) ok = s.assign(x, problem.forced[x]);
  if (ok && s.saturate(0)) s.dfs();

  std::sort(s.results.begin(), s.results.end());
  return s.results;
}

}  // namespace groupscope::detail

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "doctest.h"
#include "groupscope/catalog.hpp"
#include "groupscope/errors.hpp"
#include "groupscope/group.hpp"

using namespace groupscope;

namespace {

// The symmetric group on three points, built from scratch out of
// permutation composition so it owes nothing to the library's constructors.
std::vector<std::vector<int>> sym3_table() {
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  auto index_of = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    return -1;
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> prod;
      for (int x = 0; x < 3; ++x) prod[x] = perms[i][perms[j][x]];
      t[i][j] = index_of(prod);
    }
  return t;
}

// new_table[pi[i]][pi[j]] = pi[old_table[i][j]]
std::vector<std::vector<int>> relabel_table(const std::vector<std::vector<int>>& t,
                                            const std::vector<int>& pi) {
  const size_t n = t.size();
  std::vector<std::vector<int>> out(n, std::vector<int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[pi[i]][pi[j]] = pi[t[i][j]];
  return out;
}

std::vector<std::vector<int>> table_of(const GroupPtr& g) {
  std::vector<std::vector<int>> t(g->order(), std::vector<int>(g->order()));
  for (int i = 0; i < g->order(); ++i)
    for (int j = 0; j < g->order(); ++j) t[i][j] = g->mul(i, j);
  return t;
}

}  // namespace

TEST_CASE("a hand-built symmetric group passes validation and is not nilpotent") {
  GroupPtr g = build_group(sym3_table());
  CHECK(g->order() == 6);
  CHECK_FALSE(g->is_abelian());
  CHECK(g->exponent() == 6);
  CHECK(center(g).order() == 1);
  CHECK_FALSE(nilpotency_class(g).has_value());

  // gamma_2 = the rotation subgroup, where the series stabilises
  std::vector<Subgroup> series = lower_central_series(g, 4);
  CHECK(series[0].order() == 6);
  CHECK(series[1].order() == 3);
  CHECK(series[2].order() == 3);
  CHECK(series[3].order() == 3);
}

TEST_CASE("corrupted tables are rejected with the axiom that fails") {
  auto t = sym3_table();
  t[1][2] = 3;  // breaks associativity/latin-square structure
  CHECK_THROWS_AS(build_group(t), Error);
  try {
    build_group(t);
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotAGroup);
  }

  // non-square shape
  auto u = sym3_table();
  u[2].pop_back();
  try {
    build_group(u);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotAGroup);
  }
}

TEST_CASE("identity relocation: tables with the identity anywhere are accepted") {
  GroupPtr c4 = construct("C(4)");
  auto base = table_of(c4);
  std::vector<int> pi = {2, 3, 0, 1};  // identity moves to index 2
  auto shuffled = relabel_table(base, pi);

  std::vector<int> relabeling;
  GroupPtr g = build_group(shuffled, {}, default_limits(), &relabeling);
  CHECK(g->order() == 4);
  CHECK(g->mul(0, 0) == 0);  // identity back at index 0
  CHECK(g->is_abelian());
  CHECK(g->exponent() == 4);
  CHECK_FALSE(relabeling.empty());

  // relabeling maps new indices to old ones and transports the table
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int old_prod = shuffled[relabeling[i]][relabeling[j]];
      CHECK(relabeling[g->mul(i, j)] == old_prod);
    }
}

TEST_CASE("group axioms hold on random triples across the catalog") {
  std::mt19937 rng(12345);
  for (const CatalogEntry& e : builtin_catalog(32)) {
    const GroupPtr& g = e.group;
    std::uniform_int_distribution<int> pick(0, g->order() - 1);
    for (int trial = 0; trial < 50; ++trial) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
      CHECK(g->mul(a, g->inv(a)) == 0);
      CHECK(g->mul(0, a) == a);
      CHECK(g->mul(a, 0) == a);
    }
    // element_order agrees with iterated multiplication
    for (int x = 0; x < g->order(); ++x) {
      int acc = x, ord = 1;
      while (acc != 0) {
        acc = g->mul(acc, x);
        ++ord;
      }
      CHECK(g->element_order(x) == ord);
      CHECK(g->pow(x, ord) == 0);
      CHECK(g->pow(x, -1) == g->inv(x));
    }
  }
}

TEST_CASE("center members are exactly the elements commuting with everything") {
  for (const char* spec : {"Q(8)", "D(4)", "Q(16)", "Heis(3)", "Mod(2,4)", "SD(16)"}) {
    GroupPtr g = construct(spec);
    Subgroup z = center(g);
    for (int x = 0; x < g->order(); ++x) {
      bool commutes = true;
      for (int y = 0; y < g->order(); ++y)
        if (g->mul(x, y) != g->mul(y, x)) commutes = false;
      CHECK(z.contains(x) == commutes);
    }
  }
}

TEST_CASE("quaternion group of order 16: frozen series and center") {
  GroupPtr g = construct("Q(16)");
  std::vector<Subgroup> series = lower_central_series(g, 4);
  std::vector<int> orders;
  for (const Subgroup& s : series) orders.push_back(s.order());
  CHECK(orders == std::vector<int>{16, 4, 2, 1});
  CHECK(nilpotency_class(g) == 3);
  CHECK(subgroup_equal(series[2], center(g)));  // gamma_3 = Z here
  CHECK(quotient(g, center(g)).group->exponent() == 4);
  CHECK(exponent(series[2]) == 2);
}

TEST_CASE("lower central series terms are normal and descending") {
  for (const CatalogEntry& e : builtin_catalog(32)) {
    std::vector<Subgroup> series = lower_central_series(e.group, 5);
    for (size_t i = 0; i < series.size(); ++i) {
      CHECK(is_normal(series[i]));
      if (i > 0) {
        CHECK(series[i].order() <= series[i - 1].order());
        for (int x : series[i].members()) CHECK(series[i - 1].contains(x));
      }
    }
    // the class, when defined, is where the series hits the trivial subgroup
    std::optional<int> cls = nilpotency_class(e.group);
    if (cls) {
      std::vector<Subgroup> s = lower_central_series(e.group, *cls + 1);
      CHECK(s.back().order() == 1);
      CHECK(s[*cls - 1].order() > 1);  // gamma_class is the last nontrivial term
    }
  }
}

TEST_CASE("commutator subgroup facts on the dihedral group of order 8") {
  GroupPtr g = construct("D(4)");
  Subgroup g2 = commutator_subgroup(full_subgroup(g), full_subgroup(g));
  CHECK(g2.order() == 2);
  CHECK(subgroup_equal(g2, center(g)));
  CHECK(commutator_subgroup(full_subgroup(g), center(g)).order() == 1);
}

TEST_CASE("quotient: cosets partition the group and are ordered by minimal member") {
  GroupPtr g = construct("Q(8)");
  QuotientGroup q = quotient(g, center(g));
  CHECK(q.group->order() == 4);
  CHECK(q.group->exponent() == 2);  // Q8 / Z is the Klein four-group
  std::vector<int> seen(g->order(), 0);
  int prev_min = -1;
  for (const auto& coset : q.cosets) {
    CHECK(std::is_sorted(coset.begin(), coset.end()));
    CHECK(coset.front() > prev_min);
    prev_min = coset.front();
    for (int x : coset) seen[x]++;
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  // projection is a homomorphism onto the quotient
  for (int a = 0; a < g->order(); ++a)
    for (int b = 0; b < g->order(); ++b)
      CHECK(q.projection.image[g->mul(a, b)] ==
            q.group->mul(q.projection.image[a], q.projection.image[b]));
  CHECK_THROWS_AS(quotient(build_group(sym3_table()),
                           subgroup_generate(build_group(sym3_table()), {3})),
                  Error);  // a non-normal subgroup is rejected
}

TEST_CASE("direct products multiply componentwise, first factor slowest") {
  GroupPtr h = construct("Q(8)");
  GroupPtr a = construct("C(2)");
  ProductStructure p = direct_product({h, a});
  CHECK(p.product->order() == 16);
  for (int x = 0; x < 16; ++x)
    for (int y = 0; y < 16; ++y) {
      int prod = p.product->mul(x, y);
      CHECK(p.component(prod, 0) == h->mul(p.component(x, 0), p.component(y, 0)));
      CHECK(p.component(prod, 1) == a->mul(p.component(x, 1), p.component(y, 1)));
    }
  // tuple indexing round-trips
  for (int x = 0; x < 16; ++x)
    CHECK(p.tuple_index({p.component(x, 0), p.component(x, 1)}) == x);
  // embeddings land in the right slots
  CHECK(p.embeddings[0].image[1] == p.tuple_index({1, 0}));
  CHECK(p.embeddings[1].image[1] == p.tuple_index({0, 1}));
}

TEST_CASE("subgroup generation, intersection, and the subgroup lattice") {
  GroupPtr g = construct("D(4)");
  CHECK(subgroup_generate(g, {}).order() == 1);
  CHECK(subgroup_generate(g, {1}).order() == 4);  // the rotation subgroup

  std::vector<Subgroup> subs = all_subgroups(g);
  CHECK(subs.size() == 10);  // the dihedral group of order 8 has 10 subgroups
  for (const Subgroup& s : subs) {
    // closure and inverses
    for (int x : s.members()) {
      CHECK(s.contains(g->inv(x)));
      for (int y : s.members()) CHECK(s.contains(g->mul(x, y)));
    }
  }
  std::vector<Subgroup> normals = normal_subgroups(g);
  CHECK(normals.size() == 6);  // the four single-reflection subgroups are not normal

  // intersection is the set intersection
  Subgroup z = center(g);
  for (const Subgroup& s : subs) {
    Subgroup meet = subgroup_intersection(s, z);
    for (int x = 0; x < g->order(); ++x)
      CHECK(meet.contains(x) == (s.contains(x) && z.contains(x)));
  }
}

TEST_CASE("subgroup_as_group preserves the operation") {
  GroupPtr g = construct("Q(16)");
  Subgroup s = lower_central_series(g, 2)[1];  // cyclic of order 4
  SubgroupAsGroup sg = subgroup_as_group(s);
  CHECK(sg.group->order() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(sg.from_parent[sg.to_parent[i]] == i);
    for (int j = 0; j < 4; ++j)
      CHECK(sg.to_parent[sg.group->mul(i, j)] == g->mul(sg.to_parent[i], sg.to_parent[j]));
  }
}

TEST_CASE("exponent divisibility between quotients: larger kernels give divisors") {
  for (const CatalogEntry& e : builtin_catalog(32)) {
    const GroupPtr& g = e.group;
    Subgroup z = center(g);
    Subgroup g2 = lower_central_series(g, 2)[1];
    Subgroup h = subgroup_subset(g2, z) ? g2 : subgroup_intersection(g2, z);
    long long exp_big_kernel = quotient(g, z).group->exponent();
    long long exp_small_kernel = quotient(g, h).group->exponent();
    CHECK(exp_small_kernel % exp_big_kernel == 0);
  }
}

TEST_CASE("the exponent of the last series term divides the central quotient's") {
  for (const CatalogEntry& e : builtin_catalog(32)) {
    std::optional<int> cls = nilpotency_class(e.group);
    if (!cls || *cls < 2) continue;
    Subgroup gc = lower_central_series(e.group, *cls)[*cls - 1];
    long long e_gc = exponent(gc);
    long long e_gz = quotient(e.group, center(e.group)).group->exponent();
    CHECK(e_gz % e_gc == 0);
    if (*cls == 2) CHECK(e_gc == e_gz);
  }
}

TEST_CASE("appending an abelian factor never changes the nilpotency class") {
  for (const char* first : {"Q(8)", "D(4)", "Heis(3)", "Q(16)"}) {
    GroupPtr h = construct(first);
    for (const char* second : {"C(2)", "C(3)", "Ab(2; 1,1)"}) {
      GroupPtr k = construct(second);
      ProductStructure p = direct_product({h, k});
      CHECK(nilpotency_class(p.product) == nilpotency_class(h));
    }
  }
}

TEST_CASE("order cap: construction beyond the limit is rejected") {
  Limits tight = default_limits();
  tight.max_order = 10;
  CHECK_THROWS_AS(construct("Q(16)", tight), Error);
  try {
    construct("Q(16)", tight);
  } catch (const Error& e) {
    CHECK(e.code() == Err::OrderCapExceeded);
  }
  CHECK(construct("Q(8)", tight)->order() == 8);
}

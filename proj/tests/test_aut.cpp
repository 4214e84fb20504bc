#include <algorithm>
#include <set>

#include "doctest.h"
#include "groupscope/aut.hpp"
#include "groupscope/catalog.hpp"
#include "groupscope/errors.hpp"
#include "oracles.hpp"

using namespace groupscope;

namespace {

std::vector<std::vector<int>> images_of(const std::vector<Automorphism>& auts) {
  std::vector<std::vector<int>> out;
  for (const Automorphism& a : auts) out.push_back(a.image);
  return out;
}

}  // namespace

TEST_CASE("full automorphism groups match the brute-force permutation scan") {
  struct Case {
    const char* spec;
    size_t count;
  };
  for (const Case& c : {Case{"Q(8)", 24}, Case{"D(4)", 8}, Case{"C(8)", 4},
                        Case{"Ab(2; 1,1,1)", 168}, Case{"C(6)", 2}}) {
    GroupPtr g = construct(c.spec);
    std::vector<Automorphism> auts = automorphism_group(g);
    CHECK(auts.size() == c.count);
    CHECK(images_of(auts) == testoracle::all_automorphisms_bruteforce(g));
  }
}

TEST_CASE("automorphism lists are canonically ordered and closed") {
  GroupPtr g = construct("D(4)");
  std::vector<Automorphism> auts = automorphism_group(g);
  std::vector<std::vector<int>> imgs = images_of(auts);
  CHECK(std::is_sorted(imgs.begin(), imgs.end()));
  CHECK(auts.front().image == identity_automorphism(g).image);  // identity sorts first
  for (const Automorphism& f : auts) {
    CHECK(find_automorphism(auts, inverse_of(f).image).has_value());
    for (const Automorphism& h : auts)
      CHECK(find_automorphism(auts, compose(f, h).image).has_value());
    // composition really is function composition
    for (int x = 0; x < g->order(); ++x) CHECK(compose(f, inverse_of(f)).image[x] == x);
  }
}

TEST_CASE("conjugation maps are automorphisms and compose contravariantly") {
  GroupPtr g = construct("D(8)");
  std::vector<Automorphism> auts = automorphism_group(g);
  for (int x = 0; x < g->order(); ++x) {
    Automorphism cx = conjugation_by(g, x);
    CHECK(find_automorphism(auts, cx.image).has_value());
    for (int t = 0; t < g->order(); ++t)
      CHECK(cx.image[t] == g->mul(g->mul(g->inv(x), t), x));
  }
  // conj_x . conj_y = conj_{yx} under (f.g)(t) = f(g(t))
  for (int x : {1, 3, 9})
    for (int y : {2, 5}) {
      Automorphism lhs = compose(conjugation_by(g, x), conjugation_by(g, y));
      CHECK(lhs.image == conjugation_by(g, g->mul(y, x)).image);
    }
}

TEST_CASE("central automorphisms: frozen counts and the filter route") {
  struct Case {
    const char* spec;
    size_t count;
  };
  for (const Case& c : {Case{"Q(8)", 4}, Case{"D(4)", 4}, Case{"Mod(2,4)", 8},
                        Case{"Heis(3)", 9}, Case{"Q(16)", 4}}) {
    GroupPtr g = construct(c.spec);
    std::vector<Automorphism> ac = autcent(g);
    CHECK(ac.size() == c.count);

    // independent route: filter the full automorphism list by the definition
    // (x^-1 f(x) central for every x; nothing more — such maps need not fix
    // the center pointwise, e.g. Mod(2,4) has ones moving a^2)
    Subgroup z = center(g);
    std::vector<std::vector<int>> expected;
    for (const Automorphism& f : automorphism_group(g)) {
      bool central = true;
      for (int x = 0; x < g->order() && central; ++x)
        if (!z.contains(g->mul(g->inv(x), f(x)))) central = false;
      if (central) expected.push_back(f.image);
    }
    std::sort(expected.begin(), expected.end());
    CHECK(images_of(ac) == expected);
  }
}

TEST_CASE("class-preserving automorphisms: frozen counts") {
  CHECK(aut_class_preserving(construct("Heis(3)"), 1).size() == 9);
  CHECK(aut_class_preserving(construct("Q(8)"), 1).size() == 4);
  CHECK(aut_class_preserving(construct("D(4)"), 1).size() == 4);
  // the modular group of order 16 separates the two notions: 4 vs 8
  GroupPtr m16 = construct("Mod(2,4)");
  CHECK(aut_class_preserving(m16, 1).size() == 4);
  CHECK(autcent(m16).size() == 8);

  // the class-preserving set with conjugators from gamma_1 = G contains every
  // inner automorphism
  GroupPtr g = construct("SD(16)");
  std::vector<Automorphism> ac1 = aut_class_preserving(g, 1);
  Subgroup g2 = lower_central_series(g, 2)[1];
  for (const Automorphism& f : ac1)
    for (int x = 0; x < g->order(); ++x)
      CHECK(g2.contains(g->mul(g->inv(x), f(x))));
}

TEST_CASE("box subgroups: definition filter and frozen product values") {
  GroupPtr g = construct("Q(8)");
  Subgroup z = center(g);
  Subgroup g2 = lower_central_series(g, 2)[1];
  std::vector<Automorphism> box = aut_box(g, g2, z);

  // definition check against the full list
  std::vector<std::vector<int>> expected;
  for (const Automorphism& f : automorphism_group(g)) {
    bool in_box = true;
    for (int x = 0; x < g->order() && in_box; ++x)
      if (!g2.contains(g->mul(g->inv(x), f(x)))) in_box = false;
    for (int n : z.members())
      if (f(n) != n) in_box = false;
    if (in_box) {
      // setwise stability of M comes for free for these candidates
      expected.push_back(f.image);
    }
  }
  std::sort(expected.begin(), expected.end());
  CHECK(images_of(box) == expected);

  // frozen separation on a product: the box subgroup of Q8 x C2 over
  // (gamma_2, Z) has order 4 while the central automorphisms number 32
  GroupPtr p = construct("Q(8) x C(2)");
  Subgroup pz = center(p);
  Subgroup pg2 = lower_central_series(p, 2)[1];
  CHECK(aut_box(p, pg2, pz).size() == 4);
  CHECK(autcent(p).size() == 32);
}

TEST_CASE("box subgroups require normal inputs") {
  GroupPtr g = construct("D(4)");
  // a single reflection generates a non-normal subgroup
  std::vector<Subgroup> subs = all_subgroups(g);
  const Subgroup* bad = nullptr;
  for (const Subgroup& s : subs)
    if (!is_normal(s)) bad = &s;
  REQUIRE(bad != nullptr);
  CHECK_THROWS_AS(aut_box(g, *bad, center(g)), Error);
}

TEST_CASE("the central-quotient correspondence round-trips") {
  GroupPtr g = construct("D(4)");
  Subgroup z = center(g);
  Subgroup g2 = lower_central_series(g, 2)[1];  // equals the center here
  CentralHomContext ctx = make_central_hom_context(g, g2, z);
  std::vector<Automorphism> box = aut_box(g, g2, z);
  HomSet homs = enumerate_homs(ctx.quot.group, ctx.msag.group);
  REQUIRE(box.size() == homs.members.size());

  for (const Automorphism& f : box) {
    Morphism al = alpha_of(f, ctx);
    CHECK(automorphism_from_hom(al, ctx).image == f.image);
  }
  for (const Morphism& psi : homs.members) {
    Automorphism f = automorphism_from_hom(psi, ctx);
    CHECK(find_automorphism(box, f.image).has_value());
    CHECK(alpha_of(f, ctx).image == psi.image);
  }
  // the convenience overload agrees with the context route
  for (const Automorphism& f : box)
    CHECK(alpha_of(f, z, g2).image == alpha_of(f, ctx).image);
}

TEST_CASE("alpha rejects maps outside the box subgroup") {
  GroupPtr g = construct("Q(8)");
  Subgroup z = center(g);
  Subgroup g2 = lower_central_series(g, 2)[1];
  CentralHomContext ctx = make_central_hom_context(g, g2, z);
  // an automorphism of order 3 permuting i, j, k is not central
  std::vector<Automorphism> all = automorphism_group(g);
  const Automorphism* outside = nullptr;
  for (const Automorphism& f : all) {
    bool central = true;
    for (int x = 0; x < g->order(); ++x)
      if (!z.contains(g->mul(g->inv(x), f(x)))) central = false;
    if (!central) outside = &f;
  }
  REQUIRE(outside != nullptr);
  CHECK_THROWS_AS(alpha_of(*outside, ctx), Error);
}

TEST_CASE("product restriction and lifting are mutually inverse") {
  GroupPtr h = construct("Q(8)");
  GroupPtr c2 = construct("C(2)");
  ProductStructure p = direct_product({h, c2});
  Subgroup m = lower_central_series(h, 2)[1];
  Subgroup n = center(h);
  Subgroup big_m = embed_factor_subgroup(p, m, 0);
  Subgroup big_n = spread_factor_subgroup(p, n, 0);
  CHECK(big_m.order() == m.order());
  CHECK(big_n.order() == n.order() * 2);

  std::vector<Automorphism> box_g = aut_box(p.product, big_m, big_n);
  std::vector<Automorphism> box_h = aut_box(h, m, n);
  CHECK(box_g.size() == box_h.size());
  for (const Automorphism& f : box_g) {
    Automorphism r = restrict_product_automorphism(p, f, 0, m, n);
    CHECK(find_automorphism(box_h, r.image).has_value());
    CHECK(lift_product_automorphism(p, r, 0).image == f.image);
  }
  for (const Automorphism& b : box_h) {
    Automorphism lifted = lift_product_automorphism(p, b, 0);
    CHECK(find_automorphism(box_g, lifted.image).has_value());
    CHECK(restrict_product_automorphism(p, lifted, 0, m, n).image == b.image);
  }
}

TEST_CASE("purely non-abelian detection with witnesses") {
  CHECK(purely_nonabelian_test(construct("Q(8)")).purely);
  CHECK(purely_nonabelian_test(construct("D(4)")).purely);
  CHECK(purely_nonabelian_test(construct("SD(16)")).purely);
  CHECK(purely_nonabelian_test(construct("Mod(2,4)")).purely);

  PurelyNonabelianResult split = purely_nonabelian_test(construct("Q(8) x C(2)"));
  CHECK_FALSE(split.purely);
  REQUIRE(split.witness.has_value());
  const auto& [hh, aa] = *split.witness;
  CHECK(hh.order() * aa.order() == 16);
  CHECK(is_abelian(aa));
  CHECK(aa.order() > 1);
  CHECK(subgroup_intersection(hh, aa).order() == 1);

  // abelian groups are never purely non-abelian
  CHECK_FALSE(purely_nonabelian_test(construct("C(8)")).purely);
}

TEST_CASE("automorphism lists materialize as groups") {
  std::vector<Automorphism> ac = autcent(construct("Q(8)"));
  GroupPtr g = automorphism_list_group(ac);
  CHECK(g->order() == 4);
  CHECK(g->is_abelian());
  CHECK(g->exponent() == 2);
  // element i is ac[i] and the law is composition
  for (size_t i = 0; i < ac.size(); ++i)
    for (size_t j = 0; j < ac.size(); ++j)
      CHECK(ac[static_cast<size_t>(g->mul(static_cast<int>(i), static_cast<int>(j)))].image ==
            compose(ac[i], ac[j]).image);
}

TEST_CASE("order caps: warnings above the soft cap, errors above the hard cap") {
  std::vector<Automorphism> box;
  static std::vector<std::string> captured;
  captured.clear();
  set_warning_handler(+[](const std::string& msg) { captured.push_back(msg); });
  GroupPtr big = construct("Heis(3) x C(3)");  // order 81: above 64, below 128
  Subgroup z = center(big);
  Subgroup g2 = lower_central_series(big, 2)[1];
  box = aut_box(big, g2, z);
  set_warning_handler(nullptr);
  CHECK_FALSE(captured.empty());
  CHECK(box.size() == 9);

  GroupPtr caps = construct("Ab(2; 1,1,1) x Ab(2; 1,1,1) x C(4)");  // order 256
  CHECK_THROWS_AS(automorphism_group(caps), Error);
  try {
    automorphism_group(caps);
  } catch (const Error& e) {
    CHECK(e.code() == Err::OrderCapExceeded);
  }
}

TEST_CASE("aut list equality compares canonical lists") {
  GroupPtr g = construct("Q(8)");
  std::vector<Automorphism> a = autcent(g);
  std::vector<Automorphism> b = autcent(g);
  CHECK(aut_lists_equal(a, b));
  b.pop_back();
  CHECK_FALSE(aut_lists_equal(a, b));
}

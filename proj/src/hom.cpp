#include "groupscope/hom.hpp"

#include <algorithm>
#include <map>

namespace groupscope {

QuotientGroup abelianization(const GroupPtr& g) {
  return quotient(g, commutator_subgroup(full_subgroup(g), full_subgroup(g)));
}

Morphism trivial_morphism(const GroupPtr& domain, const GroupPtr& codomain) {
  return make_morphism(domain, codomain,
                       std::vector<int>(domain->order(), FiniteGroup::identity));
}

Morphism pointwise_product(const Morphism& f, const Morphism& g) {
  if (f.domain != g.domain || f.codomain != g.codomain)
    fail(Err::MismatchedParent, "pointwise product needs matching endpoints");
  if (!f.codomain->is_abelian())
    fail(Err::NotAbelianCodomain, "pointwise product needs an abelian codomain");
  std::vector<int> image(f.image.size());
  for (size_t x = 0; x < image.size(); ++x)
    image[x] = f.codomain->mul(f.image[x], g.image[x]);
  return make_morphism(f.domain, f.codomain, std::move(image));
}

Morphism pointwise_inverse(const Morphism& f) {
  if (!f.codomain->is_abelian())
    fail(Err::NotAbelianCodomain, "pointwise inverse needs an abelian codomain");
  std::vector<int> image(f.image.size());
  for (size_t x = 0; x < image.size(); ++x) image[x] = f.codomain->inv(f.image[x]);
  return make_morphism(f.domain, f.codomain, std::move(image));
}

HomSet enumerate_homs(const GroupPtr& g, const GroupPtr& a) {
  if (!a->is_abelian()) fail(Err::NotAbelianCodomain, "hom enumeration needs an abelian codomain");

  const QuotientGroup q = abelianization(g);
  const AbelianBasis basis = abelian_basis(q.group);
  const size_t s = basis.gens.size();
  const int qn = q.group->order();

  // Coordinates of every abelianization element in the cyclic basis.
  std::vector<std::vector<int>> coords(qn);
  std::vector<unsigned char> hit(qn, 0);
  std::vector<int> tuple(s, 0);
  while (true) {
    int elt = FiniteGroup::identity;
    for (size_t i = 0; i < s; ++i) elt = q.group->mul(elt, q.group->pow(basis.gens[i], tuple[i]));
    if (hit[elt]) fail(Err::Internal, "abelian basis does not span freely");
    hit[elt] = 1;
    coords[elt] = tuple;
    size_t i = s;
    while (i > 0) {
      --i;
      if (++tuple[i] < basis.orders[i]) break;
      tuple[i] = 0;
      if (i == 0) {
        i = s + 1;  // wrapped completely
        break;
      }
    }
    if (s == 0 || i == s + 1) break;
  }
  for (int x = 0; x < qn; ++x)
    if (!hit[x]) fail(Err::Internal, "abelian basis does not span the group");

  // A basis element of order d may map to any d-torsion element of A.
  std::vector<std::vector<int>> cands(s);
  for (size_t i = 0; i < s; ++i)
    for (int y = 0; y < a->order(); ++y)
      if (a->pow(y, basis.orders[i]) == FiniteGroup::identity) cands[i].push_back(y);

  HomSet out{g, a, {}};
  std::vector<size_t> pick(s, 0);
  while (true) {
    std::vector<int> image_q(qn);
    for (int x = 0; x < qn; ++x) {
      int val = FiniteGroup::identity;
      for (size_t i = 0; i < s; ++i) val = a->mul(val, a->pow(cands[i][pick[i]], coords[x][i]));
      image_q[x] = val;
    }
    std::vector<int> image(g->order());
    for (int t = 0; t < g->order(); ++t) image[t] = image_q[q.projection.image[t]];
    out.members.push_back(make_morphism(g, a, std::move(image)));

    size_t i = s;
    while (i > 0) {
      --i;
      if (++pick[i] < cands[i].size()) break;
      pick[i] = 0;
      if (i == 0) {
        i = s + 1;
        break;
      }
    }
    if (s == 0 || i == s + 1) break;
  }

  std::sort(out.members.begin(), out.members.end(),
            [](const Morphism& x, const Morphism& y) { return x.image < y.image; });
  return out;
}

QuotientHoms enumerate_homs_from_quotient(const GroupPtr& g, const Subgroup& n,
                                          const Subgroup& m) {
  if (n.parent() != g || m.parent() != g)
    fail(Err::MismatchedParent, "subgroups must belong to the given group");
  if (!is_abelian(m)) fail(Err::NotAbelianCodomain, "hom target subgroup must be abelian");
  QuotientGroup quot = quotient(g, n);
  SubgroupAsGroup codomain = subgroup_as_group(m);
  HomSet homs = enumerate_homs(quot.group, codomain.group);
  return QuotientHoms{std::move(quot), std::move(codomain), std::move(homs)};
}

HomCSubset hom_c_subset(const GroupPtr& g, const Subgroup& h, int n) {
  if (n < 2) fail(Err::BadParameter, "commutator-valued hom subset needs n >= 2");
  if (h.parent() != g) fail(Err::MismatchedParent, "subgroup must belong to the given group");
  const auto cls = nilpotency_class(g);
  if (!cls || *cls > n)
    fail(Err::HypothesisViolated, "group must be nilpotent of class at most n");
  const auto series = lower_central_series(g, n);
  const Subgroup& gamma_n = series[n - 1];
  const Subgroup& gamma_prev = series[n - 2];
  if (!subgroup_subset(gamma_n, h) || !subgroup_subset(h, center(g)))
    fail(Err::HypothesisViolated, "need gamma_n(G) <= H <= Z(G)");

  QuotientGroup quot = quotient(g, h);
  SubgroupAsGroup sag = subgroup_as_group(gamma_n);
  HomSet all = enumerate_homs(quot.group, sag.group);

  const int order = g->order();
  std::vector<std::vector<unsigned char>> allowed(
      order, std::vector<unsigned char>(sag.group->order(), 0));
  for (int ge = 0; ge < order; ++ge)
    for (int x : gamma_prev.members()) {
      // [g, x] = g^-1 x^-1 g x
      const int c = g->mul(g->inv(ge), g->mul(g->inv(x), g->mul(ge, x)));
      const int local = sag.from_parent[c];
      if (local < 0) fail(Err::Internal, "commutator escaped gamma_n");
      allowed[ge][local] = 1;
    }

  HomSet members{all.domain, all.codomain, {}};
  for (const Morphism& f : all.members) {
    bool ok = true;
    for (int ge = 0; ge < order && ok; ++ge)
      if (!allowed[ge][f.image[quot.projection.image[ge]]]) ok = false;
    if (ok) members.members.push_back(f);
  }
  return HomCSubset{std::move(quot), std::move(sag), std::move(all), std::move(members)};
}

GroupPtr homset_group(const HomSet& hs) {
  const auto& mem = hs.members;
  const int k = static_cast<int>(mem.size());
  if (k == 0) fail(Err::Internal, "empty hom set has no group structure");
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < k; ++i) index[mem[i].image] = i;

  const FiniteGroup& cod = *hs.codomain;
  std::vector<int> table(static_cast<size_t>(k) * k);
  std::vector<int> prod(mem[0].image.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      for (size_t x = 0; x < prod.size(); ++x) prod[x] = cod.mul(mem[i].image[x], mem[j].image[x]);
      auto it = index.find(prod);
      if (it == index.end()) fail(Err::Internal, "hom set is not closed under pointwise product");
      table[i * k + j] = it->second;
    }

  // The trivial morphism is lexicographically least, so identity lands at 0.
  Limits lim = default_limits();
  lim.max_order = std::max(lim.max_order, k);
  return build_group_flat(std::move(table), k, {}, lim);
}

}  // namespace groupscope

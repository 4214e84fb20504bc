#include "groupscope/aut.hpp"

#include <algorithm>
#include <map>

#include "mapsearch.hpp"

namespace groupscope {

namespace {

void check_aut_cap(const GroupPtr& g, const Limits& lim) {
  if (g->order() > lim.aut_hard_cap)
    fail(Err::OrderCapExceeded, "automorphism enumeration capped at order " +
                                    std::to_string(lim.aut_hard_cap));
  if (g->order() > lim.aut_soft_cap)
    emit_warning("automorphism enumeration on a group of order " + std::to_string(g->order()) +
                 " (above the comfortable bound " + std::to_string(lim.aut_soft_cap) + ")");
}

std::vector<Automorphism> run_search(const GroupPtr& g, std::vector<std::vector<int>> candidates,
                                     std::vector<int> forced) {
  detail::MapSearchProblem prob;
  prob.dom = g.get();
  prob.cod = g.get();
  prob.candidates = std::move(candidates);
  prob.forced = std::move(forced);
  auto images = detail::search_bijective_homs(prob);
  std::vector<Automorphism> out;
  out.reserve(images.size());
  for (auto& im : images) out.push_back(Automorphism{g, std::move(im)});
  return out;
}

// Pairwise closure verification is quadratic in the list size; above this
// bound only inverse-closure is checked (with a warning).
constexpr size_t kClosureCheckBound = 5000;

void verify_closed(const GroupPtr& g, const std::vector<Automorphism>& auts) {
  std::map<std::vector<int>, size_t> index;
  for (size_t i = 0; i < auts.size(); ++i) index[auts[i].image] = i;
  const int n = g->order();
  std::vector<int> tmp(n);
  for (const auto& f : auts) {
    for (int x = 0; x < n; ++x) tmp[f.image[x]] = x;
    if (!index.count(tmp)) fail(Err::Internal, "automorphism list not closed under inverse");
  }
  if (auts.size() > kClosureCheckBound) {
    emit_warning("skipping pairwise closure verification for " + std::to_string(auts.size()) +
                 " automorphisms (inverse closure verified)");
    return;
  }
  for (const auto& f : auts)
    for (const auto& h : auts) {
      for (int x = 0; x < n; ++x) tmp[x] = f.image[h.image[x]];
      if (!index.count(tmp)) fail(Err::Internal, "automorphism list not closed under composition");
    }
}

// Membership predicates, re-verified on full element sets rather than
// trusted from the search that produced a list.
bool is_box_member(const FiniteGroup& g, const Subgroup& m, const Subgroup& n,
                   const std::vector<int>& image) {
  for (int x = 0; x < g.order(); ++x)
    if (!m.contains(g.mul(g.inv(x), image[x]))) return false;
  for (int x : n.members())
    if (image[x] != x) return false;
  std::vector<int> hit;
  for (int x : m.members()) hit.push_back(image[x]);
  std::sort(hit.begin(), hit.end());
  return hit == m.members();
}

bool is_class_preserving_member(const FiniteGroup& g, const Subgroup& gamma,
                                const std::vector<int>& image) {
  for (int x = 0; x < g.order(); ++x) {
    bool found = false;
    for (int a : gamma.members())
      if (g.mul(g.inv(a), g.mul(x, a)) == image[x]) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace

Automorphism identity_automorphism(const GroupPtr& g) {
  std::vector<int> image(g->order());
  for (int x = 0; x < g->order(); ++x) image[x] = x;
  return Automorphism{g, std::move(image)};
}

Automorphism compose(const Automorphism& f, const Automorphism& g) {
  if (f.group != g.group) fail(Err::MismatchedParent, "composing automorphisms of different groups");
  std::vector<int> image(f.image.size());
  for (size_t x = 0; x < image.size(); ++x) image[x] = f.image[g.image[x]];
  return Automorphism{f.group, std::move(image)};
}

Automorphism inverse_of(const Automorphism& f) {
  std::vector<int> image(f.image.size());
  for (size_t x = 0; x < image.size(); ++x) image[f.image[x]] = static_cast<int>(x);
  return Automorphism{f.group, std::move(image)};
}

Automorphism conjugation_by(const GroupPtr& g, int x) {
  if (x < 0 || x >= g->order()) fail(Err::NotMember, "conjugating element out of range");
  std::vector<int> image(g->order());
  const int xi = g->inv(x);
  for (int t = 0; t < g->order(); ++t) image[t] = g->mul(xi, g->mul(t, x));
  return Automorphism{g, std::move(image)};
}

std::vector<Automorphism> automorphism_group(const GroupPtr& g, const Limits& lim) {
  check_aut_cap(g, lim);
  const int n = g->order();
  std::vector<std::vector<int>> candidates(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (g->element_order(y) == g->element_order(x)) candidates[x].push_back(y);
  auto out = run_search(g, std::move(candidates), std::vector<int>(n, -1));
  verify_closed(g, out);
  return out;
}

std::vector<Automorphism> autcent(const GroupPtr& g, const Limits& lim) {
  const Subgroup z = center(g);
  const auto all = automorphism_group(g, lim);
  std::vector<Automorphism> filtered;
  for (const auto& f : all) {
    bool ok = true;
    for (int x = 0; x < g->order() && ok; ++x)
      if (!z.contains(g->mul(g->inv(x), f.image[x]))) ok = false;
    if (ok) filtered.push_back(f);
  }

  // Independent route: the box search with M = Z(G), N = gamma_2(G). The two
  // must coincide (central maps fix commutators, hence gamma_2, elementwise).
  const Subgroup gamma2 = commutator_subgroup(full_subgroup(g), full_subgroup(g));
  const auto boxed = aut_box(g, z, gamma2, lim);
  if (!aut_lists_equal(filtered, boxed))
    fail(Err::Internal, "central-automorphism filter disagreed with the box search");
  return filtered;
}

std::vector<Automorphism> aut_class_preserving(const GroupPtr& g, int n, const Limits& lim) {
  if (n < 1) fail(Err::BadParameter, "class-preserving depth must be >= 1");
  check_aut_cap(g, lim);
  const auto series = lower_central_series(g, n);
  const Subgroup& gamma = series[n - 1];

  const int order = g->order();
  std::vector<std::vector<int>> candidates(order);
  for (int x = 0; x < order; ++x) {
    std::vector<unsigned char> seen(order, 0);
    for (int a : gamma.members()) seen[g->mul(g->inv(a), g->mul(x, a))] = 1;
    for (int y = 0; y < order; ++y)
      if (seen[y]) candidates[x].push_back(y);
  }
  auto out = run_search(g, std::move(candidates), std::vector<int>(order, -1));
  for (const auto& f : out)
    if (!is_class_preserving_member(*g, gamma, f.image))
      fail(Err::Internal, "search produced a non-class-preserving map");
  return out;
}

std::vector<Automorphism> aut_box(const GroupPtr& g, const Subgroup& m, const Subgroup& n,
                                  const Limits& lim) {
  if (m.parent() != g || n.parent() != g)
    fail(Err::MismatchedParent, "box subgroups must belong to the given group");
  if (!is_normal(m)) fail(Err::NotNormal, "M must be normal");
  if (!is_normal(n)) fail(Err::NotNormal, "N must be normal");
  check_aut_cap(g, lim);

  const int order = g->order();
  std::vector<std::vector<int>> candidates(order);
  for (int x = 0; x < order; ++x) {
    for (int mm : m.members()) candidates[x].push_back(g->mul(x, mm));
    std::sort(candidates[x].begin(), candidates[x].end());
  }
  std::vector<int> forced(order, -1);
  for (int x : n.members()) forced[x] = x;

  auto out = run_search(g, std::move(candidates), std::move(forced));
  for (const auto& f : out)
    if (!is_box_member(*g, m, n, f.image))
      fail(Err::Internal, "search produced a map outside the box predicate");
  return out;
}

CentralHomContext make_central_hom_context(const GroupPtr& g, const Subgroup& m,
                                           const Subgroup& n) {
  if (m.parent() != g || n.parent() != g)
    fail(Err::MismatchedParent, "subgroups must belong to the given group");
  if (!is_central(m)) fail(Err::NotCentral, "M must be central");
  QuotientGroup quot = quotient(g, n);  // throws NotNormal
  SubgroupAsGroup msag = subgroup_as_group(m);
  return CentralHomContext{g, m, n, std::move(quot), std::move(msag)};
}

Morphism alpha_of(const Automorphism& f, const CentralHomContext& ctx) {
  const GroupPtr& g = ctx.g;
  if (f.group != g) fail(Err::MismatchedParent, "automorphism of a different group");
  if (!is_box_member(*g, ctx.m, ctx.n, f.image))
    fail(Err::NotMember, "automorphism is not in Aut_N^M");

  const int q = ctx.quot.group->order();
  std::vector<int> image(q, -1);
  for (int c = 0; c < q; ++c) {
    // g^-1 f(g) must agree on every representative of the coset.
    int val = -1;
    for (int rep : ctx.quot.cosets[c]) {
      const int v = g->mul(g->inv(rep), f.image[rep]);
      if (val < 0) val = v;
      else if (val != v)
        fail(Err::Internal, "alpha is not well defined on a coset");
    }
    const int local = ctx.msag.from_parent[val];
    if (local < 0) fail(Err::Internal, "alpha value escaped M");
    image[c] = local;
  }
  return make_morphism(ctx.quot.group, ctx.msag.group, std::move(image));
}

Morphism alpha_of(const Automorphism& f, const Subgroup& n, const Subgroup& m) {
  return alpha_of(f, make_central_hom_context(f.group, m, n));
}

Automorphism automorphism_from_hom(const Morphism& psi, const CentralHomContext& ctx) {
  if (!subgroup_subset(ctx.m, ctx.n))
    fail(Err::HypothesisViolated, "the correspondence needs M <= N");
  if (psi.domain->order() != ctx.quot.group->order() ||
      psi.domain->flat_table() != ctx.quot.group->flat_table())
    fail(Err::ShapeMismatch, "morphism domain is not this quotient");
  if (psi.codomain->order() != ctx.msag.group->order() ||
      psi.codomain->flat_table() != ctx.msag.group->flat_table())
    fail(Err::ShapeMismatch, "morphism codomain is not M");

  const GroupPtr& g = ctx.g;
  std::vector<int> image(g->order());
  for (int x = 0; x < g->order(); ++x) {
    const int val = ctx.msag.to_parent[psi.image[ctx.quot.coset_of(x)]];
    image[x] = g->mul(x, val);
  }

  // Verify the construction landed in Aut_N^M: bijective homomorphism first.
  std::vector<unsigned char> seen(g->order(), 0);
  for (int v : image) {
    if (seen[v]) fail(Err::Internal, "constructed map is not injective");
    seen[v] = 1;
  }
  for (int x = 0; x < g->order(); ++x)
    for (int y = 0; y < g->order(); ++y)
      if (image[g->mul(x, y)] != g->mul(image[x], image[y]))
        fail(Err::Internal, "constructed map is not a homomorphism");
  Automorphism f{g, std::move(image)};
  if (!is_box_member(*g, ctx.m, ctx.n, f.image))
    fail(Err::Internal, "constructed automorphism left Aut_N^M");
  return f;
}

Subgroup embed_factor_subgroup(const ProductStructure& p, const Subgroup& m_j, size_t j) {
  if (j >= p.factors.size()) fail(Err::BadParameter, "factor index out of range");
  if (m_j.parent() != p.factors[j])
    fail(Err::MismatchedParent, "subgroup must belong to factor j");
  std::vector<int> members;
  for (int m : m_j.members()) members.push_back(p.embeddings[j].image[m]);
  return Subgroup(p.product, std::move(members));
}

Subgroup spread_factor_subgroup(const ProductStructure& p, const Subgroup& n_j, size_t j) {
  if (j >= p.factors.size()) fail(Err::BadParameter, "factor index out of range");
  if (n_j.parent() != p.factors[j])
    fail(Err::MismatchedParent, "subgroup must belong to factor j");
  std::vector<int> members;
  for (int x = 0; x < p.product->order(); ++x)
    if (n_j.contains(p.component(x, static_cast<int>(j)))) members.push_back(x);
  return Subgroup(p.product, std::move(members));
}

Automorphism restrict_product_automorphism(const ProductStructure& p, const Automorphism& f,
                                           size_t j, const Subgroup& m_j, const Subgroup& n_j) {
  if (f.group != p.product) fail(Err::MismatchedParent, "automorphism of a different group");
  const Subgroup m = embed_factor_subgroup(p, m_j, j);
  const Subgroup n = spread_factor_subgroup(p, n_j, j);
  if (!is_box_member(*p.product, m, n, f.image))
    fail(Err::NotMember, "automorphism is not in the product-shaped Aut_N^M");

  const GroupPtr& h = p.factors[j];
  std::vector<int> image(h->order());
  for (int x = 0; x < h->order(); ++x)
    image[x] = p.projections[j].image[f.image[p.embeddings[j].image[x]]];

  std::vector<unsigned char> seen(h->order(), 0);
  for (int v : image) {
    if (seen[v]) fail(Err::Internal, "restriction is not injective");
    seen[v] = 1;
  }
  for (int x = 0; x < h->order(); ++x)
    for (int y = 0; y < h->order(); ++y)
      if (image[h->mul(x, y)] != h->mul(image[x], image[y]))
        fail(Err::Internal, "restriction is not a homomorphism");
  Automorphism out{h, std::move(image)};
  if (!is_box_member(*h, m_j, n_j, out.image))
    fail(Err::Internal, "restriction left Aut_{N_j}^{M_j}");
  return out;
}

Automorphism lift_product_automorphism(const ProductStructure& p, const Automorphism& psi,
                                       size_t j) {
  if (j >= p.factors.size()) fail(Err::BadParameter, "factor index out of range");
  if (psi.group != p.factors[j]) fail(Err::MismatchedParent, "automorphism must act on factor j");
  const int n = p.product->order();
  const int k = static_cast<int>(p.factors.size());
  std::vector<int> image(n);
  std::vector<int> comps(k);
  for (int x = 0; x < n; ++x) {
    for (int c = 0; c < k; ++c) comps[c] = p.component(x, c);
    comps[j] = psi.image[comps[j]];
    image[x] = p.tuple_index(comps);
  }
  return Automorphism{p.product, std::move(image)};
}

PurelyNonabelianResult purely_nonabelian_test(const GroupPtr& g, const Limits& lim) {
  PurelyNonabelianResult res;
  if (g->order() == 1) {
    res.purely = true;  // no nontrivial factor exists at all
    return res;
  }
  if (g->is_abelian()) {
    res.purely = false;
    res.witness = std::make_pair(trivial_subgroup(g), full_subgroup(g));
    return res;
  }

  const auto normals = normal_subgroups(g, lim);
  for (const Subgroup& a : normals) {
    if (a.order() == 1 || !is_central(a)) continue;  // abelian factor must be central
    for (const Subgroup& h : normals) {
      if (static_cast<long long>(h.order()) * a.order() != g->order()) continue;
      bool trivial_meet = true;
      for (int x : a.members())
        if (x != FiniteGroup::identity && h.contains(x)) {
          trivial_meet = false;
          break;
        }
      if (!trivial_meet) continue;
      res.purely = false;
      res.witness = std::make_pair(h, a);
      return res;
    }
  }
  res.purely = true;
  return res;
}

GroupPtr automorphism_list_group(const std::vector<Automorphism>& auts) {
  const int k = static_cast<int>(auts.size());
  if (k == 0) fail(Err::Internal, "empty automorphism list has no group structure");
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < k; ++i) index[auts[i].image] = i;

  const int n = static_cast<int>(auts[0].image.size());
  std::vector<int> table(static_cast<size_t>(k) * k);
  std::vector<int> tmp(n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      for (int x = 0; x < n; ++x) tmp[x] = auts[i].image[auts[j].image[x]];
      auto it = index.find(tmp);
      if (it == index.end())
        fail(Err::Internal, "automorphism list is not closed under composition");
      table[i * k + j] = it->second;
    }
  // The identity permutation is lexicographically least, so it sits at 0.
  Limits lim = default_limits();
  lim.max_order = std::max(lim.max_order, k);
  return build_group_flat(std::move(table), k, {}, lim);
}

bool aut_lists_equal(const std::vector<Automorphism>& a, const std::vector<Automorphism>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].image != b[i].image) return false;
  return true;
}

std::optional<size_t> find_automorphism(const std::vector<Automorphism>& auts,
                                        const std::vector<int>& image) {
  auto it = std::lower_bound(auts.begin(), auts.end(), image,
                             [](const Automorphism& f, const std::vector<int>& im) {
                               return f.image < im;
                             });
  if (it == auts.end() || it->image != image) return std::nullopt;
  return static_cast<size_t>(it - auts.begin());
}

}  // namespace groupscope

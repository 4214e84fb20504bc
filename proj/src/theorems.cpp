#include "groupscope/theorems.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mapsearch.hpp"

namespace groupscope {

namespace {

using Clock = std::chrono::steady_clock;

// Fills in wall_ms when the checker returns, on every path.
struct Stopwatch {
  TheoremReport& rep;
  Clock::time_point t0 = Clock::now();
  explicit Stopwatch(TheoremReport& r) : rep(r) {}
  ~Stopwatch() {
    rep.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }
};

void hyp(TheoremReport& r, const std::string& name, bool holds) {
  r.hypotheses.emplace_back(name, holds);
}

bool hyps_ok(const TheoremReport& r) {
  for (const auto& [name, holds] : r.hypotheses)
    if (!holds) return false;
  return true;
}

void wit(TheoremReport& r, const std::string& key, std::string value) {
  r.witnesses.emplace_back(key, std::move(value));
}

void wit(TheoremReport& r, const std::string& key, long long value) {
  wit(r, key, std::to_string(value));
}

void wit(TheoremReport& r, const std::string& key, size_t value) {
  wit(r, key, std::to_string(value));
}

void wit(TheoremReport& r, const std::string& key, bool value) {
  wit(r, key, std::string(value ? "true" : "false"));
}

TheoremReport start(const std::string& id, const std::string& spec_name) {
  TheoremReport r;
  r.theorem_id = id;
  r.group_spec = spec_name.empty() ? "(unnamed)" : spec_name;
  return r;
}

Subgroup gamma_k(const GroupPtr& g, int k) { return lower_central_series(g, k).back(); }

bool prime_power_order(const GroupPtr& g, long long* prime = nullptr) {
  int n = g->order();
  if (n <= 1) return false;
  long long p = 0;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = n;
  while (n % p == 0) n = static_cast<int>(n / p);
  if (n != 1) return false;
  if (prime) *prime = p;
  return true;
}

void require_nonabelian_p_group(const GroupPtr& g) {
  if (!prime_power_order(g)) fail(Err::NotPGroup, "the statement concerns p-groups");
  if (g->is_abelian()) fail(Err::NotNonabelian, "the statement concerns non-abelian groups");
}

std::string subgroup_desc(const Subgroup& s) {
  return "order " + std::to_string(s.order());
}

// Binary search in a lexicographically sorted homomorphism list.
bool homset_contains(const HomSet& hs, const std::vector<int>& image) {
  auto it = std::lower_bound(
      hs.members.begin(), hs.members.end(), image,
      [](const Morphism& m, const std::vector<int>& v) { return m.image < v; });
  return it != hs.members.end() && it->image == image;
}

std::vector<std::vector<int>> sorted_images(const std::vector<Morphism>& ms) {
  std::vector<std::vector<int>> out;
  out.reserve(ms.size());
  for (const Morphism& m : ms) out.push_back(m.image);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> sorted_images(const std::vector<Automorphism>& as) {
  std::vector<std::vector<int>> out;
  out.reserve(as.size());
  for (const Automorphism& a : as) out.push_back(a.image);
  std::sort(out.begin(), out.end());
  return out;
}

// Shared verification for the product-restriction correspondence: checks that
// restriction is a bijection box(G) -> box(H_j) with the factor-lift as a
// two-sided inverse, and that it is multiplicative on all pairs.
struct BoxRestriction {
  bool ok = true;
  std::vector<Automorphism> box_g;
  std::vector<Automorphism> box_h;
  std::vector<Automorphism> restricted;  // restricted[i] corresponds to box_g[i]
};

BoxRestriction verify_box_restriction(const ProductStructure& p, size_t j, const Subgroup& m_j,
                                      const Subgroup& n_j, const Limits& lim) {
  BoxRestriction out;
  Subgroup m = embed_factor_subgroup(p, m_j, j);
  Subgroup n = spread_factor_subgroup(p, n_j, j);
  out.box_g = aut_box(p.product, m, n, lim);
  out.box_h = aut_box(p.factors[j], m_j, n_j, lim);

  bool ok = out.box_g.size() == out.box_h.size();
  std::set<std::vector<int>> images;
  for (const Automorphism& f : out.box_g) {
    Automorphism r = restrict_product_automorphism(p, f, j, m_j, n_j);
    ok = ok && find_automorphism(out.box_h, r.image).has_value();
    Automorphism back = lift_product_automorphism(p, r, j);
    ok = ok && back.image == f.image;
    images.insert(r.image);
    out.restricted.push_back(std::move(r));
  }
  ok = ok && images.size() == out.box_g.size();

  for (const Automorphism& b : out.box_h) {
    Automorphism lifted = lift_product_automorphism(p, b, j);
    ok = ok && find_automorphism(out.box_g, lifted.image).has_value();
    Automorphism again = restrict_product_automorphism(p, lifted, j, m_j, n_j);
    ok = ok && again.image == b.image;
  }

  for (size_t i = 0; ok && i < out.box_g.size(); ++i)
    for (size_t l = 0; ok && l < out.box_g.size(); ++l) {
      Automorphism both = compose(out.box_g[i], out.box_g[l]);
      Automorphism left = restrict_product_automorphism(p, both, j, m_j, n_j);
      Automorphism right = compose(out.restricted[i], out.restricted[l]);
      ok = left.image == right.image;
    }

  out.ok = ok;
  return out;
}

// Core of the class-preserving correspondence: phi(f) = alpha_f carries
// Aut_c^{n-1}(G) bijectively and multiplicatively onto Hom_c(G/H, gamma_n).
void verify_t35_core(TheoremReport& rep, const GroupPtr& g, const Subgroup& h_sub, int n,
                     const Limits& lim) {
  std::optional<int> cls = nilpotency_class(g);
  Subgroup gn = gamma_k(g, n);
  Subgroup z = center(g);
  hyp(rep, "nilpotent of class at most n", cls.has_value() && *cls <= n);
  hyp(rep, "n >= 2", n >= 2);
  hyp(rep, "gamma_n contained in H", subgroup_subset(gn, h_sub));
  hyp(rep, "H central", subgroup_subset(h_sub, z));
  wit(rep, "n", static_cast<long long>(n));
  if (!hyps_ok(rep)) return;

  HomCSubset hcs = hom_c_subset(g, h_sub, n);
  std::vector<Automorphism> ac = aut_class_preserving(g, n - 1, lim);
  CentralHomContext ctx = make_central_hom_context(g, gn, h_sub);

  bool ok = ac.size() == hcs.members.members.size();
  std::vector<Morphism> alphas;
  std::set<std::vector<int>> images;
  for (const Automorphism& f : ac) {
    Morphism al = alpha_of(f, ctx);
    ok = ok && homset_contains(hcs.members, al.image);
    images.insert(al.image);
    alphas.push_back(std::move(al));
  }
  ok = ok && images.size() == ac.size();

  // phi(Aut_c^{n-1}) must be exactly the commutator-valued subset.
  std::vector<std::vector<int>> got(images.begin(), images.end());
  ok = ok && got == sorted_images(hcs.members.members);

  for (size_t i = 0; ok && i < ac.size(); ++i)
    for (size_t l = 0; ok && l < ac.size(); ++l) {
      Morphism left = alpha_of(compose(ac[i], ac[l]), ctx);
      Morphism right = pointwise_product(alphas[i], alphas[l]);
      ok = left.image == right.image;
    }

  wit(rep, "aut_c_order", ac.size());
  wit(rep, "hom_c_order", hcs.members.members.size());
  wit(rep, "hom_full_order", hcs.all.members.size());
  rep.conclusion = ok;
}

// The shared skeleton of the two section-4 equality theorems. `use_box`
// selects Aut_{Z}^{gamma_n}(G) as the left side instead of Aut_c^{n-1}(G);
// `conclude_iso` adds the Hom(G/Z, gamma_n) isomorphism to the branch-2
// conclusion and to the converse premise.
void verify_s4_equality(TheoremReport& rep, const GroupPtr& g, int n, bool use_box,
                        bool conclude_iso, const Limits& lim) {
  require_nonabelian_p_group(g);
  hyp(rep, "non-abelian p-group", true);
  hyp(rep, "n >= 2", n >= 2);
  wit(rep, "n", static_cast<long long>(n));
  if (n < 2) return;

  Subgroup gn = gamma_k(g, n);
  Subgroup z = center(g);
  std::vector<Automorphism> left =
      use_box ? aut_box(g, gn, z, lim) : aut_class_preserving(g, n - 1, lim);
  std::vector<Automorphism> acent = autcent(g, lim);
  const bool eq = aut_lists_equal(left, acent);
  const bool gn_le_z = subgroup_subset(gn, z);
  const bool gn_eq_z = subgroup_equal(gn, z);

  wit(rep, use_box ? "aut_box_order" : "aut_c_order", left.size());
  wit(rep, "autcent_order", acent.size());
  wit(rep, "left_side_equals_autcent", eq);
  wit(rep, "gamma_n_le_center", gn_le_z);
  wit(rep, "gamma_n_eq_center", gn_eq_z);

  // The Hom(G/Z, gamma_n) comparison is only ever needed once gamma_n = Z.
  std::optional<bool> iso;
  auto hom_iso = [&]() {
    if (!iso) {
      QuotientHoms qh = enumerate_homs_from_quotient(g, z, gn);
      GroupPtr hom_group = homset_group(qh.homs);
      GroupPtr left_group = automorphism_list_group(left);
      iso = iso_test(left_group, hom_group, lim);
      wit(rep, "hom_gz_gamma_n_order", qh.homs.members.size());
      wit(rep, "iso_with_hom", *iso);
    }
    return *iso;
  };

  const bool converse_premise = conclude_iso ? (gn_eq_z && hom_iso()) : gn_eq_z;
  const bool applicable = eq || converse_premise;
  hyp(rep,
      use_box ? "box equality holds, or the converse premise holds"
              : "class-preserving equality holds, or the converse premise holds",
      applicable);
  if (!applicable) {
    wit(rep, "note", std::string("neither the equality hypothesis nor the converse premise "
                                 "holds; nothing to assert"));
    return;
  }

  bool concl = true;
  QuotientGroup over_gamma2 = quotient(g, gamma_k(g, 2));
  const long long exp_over_gamma2 = over_gamma2.group->exponent();
  wit(rep, "exp_G_mod_gamma2", exp_over_gamma2);

  if (eq) {
    concl = concl && gn_le_z;
    if (gn_le_z) {
      AbelianPInvariants ign = abelian_invariants(gn);
      AbelianPInvariants iz = abelian_invariants(z);
      const bool rank_eq = rank(ign) == rank(iz);
      wit(rep, "d_gamma_n", static_cast<long long>(rank(ign)));
      wit(rep, "d_center", static_cast<long long>(rank(iz)));
      concl = concl && rank_eq;
      if (rank_eq) {
        const long long v = var_statistic(ign, iz);
        wit(rep, "var_gamma_n_center", v);
        if (exp_over_gamma2 > v) {
          wit(rep, "exp_var_branch", std::string("fired"));
          concl = concl && gn_eq_z;
          if (conclude_iso) concl = concl && hom_iso();
        } else {
          wit(rep, "exp_var_branch", std::string("not fired (exponent does not exceed var)"));
        }
      } else {
        wit(rep, "exp_var_branch", std::string("not applicable (rank mismatch)"));
      }
    }
  }

  if (converse_premise) {
    concl = concl && eq;
    // With gamma_n = Z the invariants agree, so var = 1; the inequality is
    // still checked numerically rather than assumed.
    AbelianPInvariants ign = abelian_invariants(gn);
    AbelianPInvariants iz = abelian_invariants(z);
    const long long v = rank(ign) == rank(iz) ? var_statistic(ign, iz) : -1;
    wit(rep, "converse_var", v);
    concl = concl && v >= 0 && exp_over_gamma2 > v;
  }

  rep.conclusion = concl;
}

TheoremReport not_applicable(const std::string& id, const std::string& spec_name,
                             const std::string& missing, const std::string& detail = "") {
  TheoremReport rep = start(id, spec_name);
  hyp(rep, missing, false);
  if (!detail.empty()) wit(rep, "reason", detail);
  return rep;
}

}  // namespace

bool TheoremReport::hypotheses_ok() const { return hyps_ok(*this); }

const char* TheoremReport::status() const {
  if (!hypotheses_ok()) return "NOT-APPLICABLE";
  return conclusion ? "OK" : "FAILED";
}

bool iso_test(const GroupPtr& a, const GroupPtr& b, const Limits& lim) {
  if (!a || !b) fail(Err::Internal, "iso_test needs two groups");
  if (a->order() != b->order()) return false;
  const int n = a->order();
  if (n > lim.aut_hard_cap)
    fail(Err::OrderCapExceeded, "isomorphism search on order " + std::to_string(n) +
                                    " exceeds the cap " + std::to_string(lim.aut_hard_cap));
  if (n > lim.aut_soft_cap)
    emit_warning("isomorphism search on order " + std::to_string(n) +
                 " is above the soft cap " + std::to_string(lim.aut_soft_cap));
  if (a->is_abelian() != b->is_abelian()) return false;

  std::vector<int> profile_a(n + 1, 0), profile_b(n + 1, 0);
  for (int x = 0; x < n; ++x) {
    ++profile_a[a->element_order(x)];
    ++profile_b[b->element_order(x)];
  }
  if (profile_a != profile_b) return false;
  if (n == 1) return true;

  detail::MapSearchProblem pr;
  pr.dom = a.get();
  pr.cod = b.get();
  pr.candidates.resize(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (a->element_order(x) == b->element_order(y)) pr.candidates[x].push_back(y);
  pr.forced.assign(n, -1);
  pr.stop_at_first = true;
  return !detail::search_bijective_homs(pr).empty();
}

TheoremReport check_adney_yen(const GroupPtr& g, const std::string& spec_name,
                              const Limits& lim) {
  TheoremReport rep = start("T2.4", spec_name);
  Stopwatch sw(rep);
  PurelyNonabelianResult pn = purely_nonabelian_test(g, lim);
  hyp(rep, "purely non-abelian", pn.purely);
  if (!pn.purely) {
    if (pn.witness)
      wit(rep, "abelian_direct_factor",
          "H " + subgroup_desc(pn.witness->first) + ", A " + subgroup_desc(pn.witness->second));
    return rep;
  }
  std::vector<Automorphism> ac = autcent(g, lim);
  SubgroupAsGroup zg = subgroup_as_group(center(g));
  HomSet homs = enumerate_homs(g, zg.group);
  wit(rep, "autcent_order", ac.size());
  wit(rep, "hom_g_center_order", homs.members.size());
  rep.conclusion = ac.size() == homs.members.size();
  return rep;
}

namespace {

// Nontrivial proper-or-full direct factors of G: subgroups D with a normal
// complement E (D cap E = 1, |D| |E| = |G|).
std::vector<Subgroup> direct_factors(const GroupPtr& g, const Limits& lim) {
  std::vector<Subgroup> normals = normal_subgroups(g, lim);
  std::vector<Subgroup> out;
  for (const Subgroup& d : normals) {
    if (d.order() == 1) continue;
    bool has_complement = false;
    for (const Subgroup& e : normals) {
      if (static_cast<long long>(d.order()) * e.order() != g->order()) continue;
      if (subgroup_intersection(d, e).order() == 1) {
        has_complement = true;
        break;
      }
    }
    if (has_complement) out.push_back(d);
  }
  return out;
}

}  // namespace

TheoremReport check_bidwell(const GroupPtr& h, const GroupPtr& k, const std::string& spec_name,
                            const Limits& lim) {
  TheoremReport rep = start("L2.5", spec_name);
  Stopwatch sw(rep);

  std::optional<std::string> common;
  std::vector<Subgroup> fh = direct_factors(h, lim);
  std::vector<Subgroup> fk = direct_factors(k, lim);
  for (const Subgroup& a : fh) {
    if (common) break;
    SubgroupAsGroup ga = subgroup_as_group(a);
    for (const Subgroup& b : fk) {
      if (a.order() != b.order()) continue;
      SubgroupAsGroup gb = subgroup_as_group(b);
      if (iso_test(ga.group, gb.group, lim)) {
        common = "shared direct factor of order " + std::to_string(a.order());
        break;
      }
    }
  }
  hyp(rep, "no common nontrivial direct factor", !common.has_value());
  if (common) {
    wit(rep, "common_factor", *common);
    return rep;
  }

  ProductStructure ps = direct_product({h, k}, lim);
  std::vector<Automorphism> ac_g = autcent(ps.product, lim);
  const size_t ac_h = autcent(h, lim).size();
  const size_t ac_k = autcent(k, lim).size();
  const size_t hom_h_zk = enumerate_homs(h, subgroup_as_group(center(k)).group).members.size();
  const size_t hom_k_zh = enumerate_homs(k, subgroup_as_group(center(h)).group).members.size();
  const unsigned long long rhs = static_cast<unsigned long long>(ac_h) * ac_k * hom_h_zk * hom_k_zh;

  wit(rep, "autcent_product_order", ac_g.size());
  wit(rep, "autcent_h_order", ac_h);
  wit(rep, "autcent_k_order", ac_k);
  wit(rep, "hom_h_center_k_order", hom_h_zk);
  wit(rep, "hom_k_center_h_order", hom_k_zh);
  rep.conclusion = ac_g.size() == rhs;
  return rep;
}

TheoremReport check_l26(const GroupPtr& g, int n, const std::string& spec_name,
                        const Limits& lim) {
  TheoremReport rep = start("L2.6", spec_name);
  Stopwatch sw(rep);
  (void)lim;

  const bool pp = prime_power_order(g);
  Subgroup gn = gamma_k(g, std::max(n, 1));
  Subgroup z = center(g);
  hyp(rep, "prime-power order", pp);
  hyp(rep, "gamma_n central", pp && subgroup_subset(gn, z));
  wit(rep, "n", static_cast<long long>(n));
  if (!hyps_ok(rep)) return rep;

  QuotientGroup ab = quotient(g, gamma_k(g, 2));
  AbelianPInvariants d_inv = abelian_invariants(ab.group);
  AbelianPInvariants h_inv = abelian_invariants(gn);
  AbelianPInvariants k_inv = abelian_invariants(z);

  try {
    HomEqualityRecord rec = hom_equality_test(d_inv, h_inv, k_inv);
    wit(rep, "hom_into_gamma_n", static_cast<long long>(rec.hom_h));
    wit(rep, "hom_into_center", static_cast<long long>(rec.hom_k));
    wit(rep, "hom_equal", rec.hom_equal);
    wit(rep, "criterion", rec.criterion);
    if (rec.var_hk) wit(rep, "var", rec.var_hk);
    rep.conclusion = rec.hom_equal == rec.criterion;
  } catch (const Error& e) {
    if (e.code() != Err::Internal) throw;
    wit(rep, "disagreement", std::string(e.what()));
    rep.conclusion = false;
  }
  return rep;
}

TheoremReport check_t31(const ProductStructure& p, size_t j, const Subgroup& m_j,
                        const Subgroup& n_j, const std::string& spec_name, const Limits& lim) {
  TheoremReport rep = start("T3.1", spec_name);
  Stopwatch sw(rep);
  if (j >= p.factors.size()) fail(Err::BadParameter, "factor index out of range");
  hyp(rep, "M_j normal in its factor", is_normal(m_j));
  hyp(rep, "N_j normal in its factor", is_normal(n_j));
  if (!hyps_ok(rep)) return rep;

  BoxRestriction br = verify_box_restriction(p, j, m_j, n_j, lim);
  wit(rep, "box_product_order", br.box_g.size());
  wit(rep, "box_factor_order", br.box_h.size());
  rep.conclusion = br.ok;
  return rep;
}

TheoremReport check_t32(const GroupPtr& h, const GroupPtr& a, int n,
                        const std::string& spec_name, const Limits& lim) {
  TheoremReport rep = start("T3.2", spec_name);
  Stopwatch sw(rep);
  PurelyNonabelianResult pn = purely_nonabelian_test(h, lim);
  hyp(rep, "first factor purely non-abelian", pn.purely);
  hyp(rep, "complement abelian", a->is_abelian());
  hyp(rep, "complement nontrivial", a->order() > 1);
  hyp(rep, "n >= 2", n >= 2);
  wit(rep, "n", static_cast<long long>(n));
  if (!hyps_ok(rep)) return rep;

  ProductStructure ps = direct_product({h, a}, lim);
  Subgroup z_h = center(h);
  Subgroup gn_h = gamma_k(h, n);

  // Factorization of the center and the series term through the product.
  bool ok = subgroup_equal(center(ps.product), spread_factor_subgroup(ps, z_h, 0));
  ok = ok && subgroup_equal(gamma_k(ps.product, n), embed_factor_subgroup(ps, gn_h, 0));
  wit(rep, "center_factorizes", ok);

  BoxRestriction br = verify_box_restriction(ps, 0, gn_h, z_h, lim);
  ok = ok && br.ok;
  wit(rep, "box_product_order", br.box_g.size());
  wit(rep, "box_factor_order", br.box_h.size());

  std::vector<Automorphism> ac_g = aut_class_preserving(ps.product, n - 1, lim);
  std::vector<Automorphism> ac_h = aut_class_preserving(h, n - 1, lim);
  ok = ok && ac_g.size() == ac_h.size();

  std::set<std::vector<int>> mapped;
  for (const Automorphism& f : ac_g) {
    ok = ok && find_automorphism(br.box_g, f.image).has_value();
    Automorphism r = restrict_product_automorphism(ps, f, 0, gn_h, z_h);
    mapped.insert(r.image);
  }
  std::vector<std::vector<int>> got(mapped.begin(), mapped.end());
  ok = ok && got == sorted_images(ac_h);

  wit(rep, "aut_c_product_order", ac_g.size());
  wit(rep, "aut_c_factor_order", ac_h.size());
  rep.conclusion = ok;
  return rep;
}

TheoremReport check_l33(const GroupPtr& g, const Subgroup& m, const Subgroup& n,
                        const std::string& spec_name, const Limits& lim) {
  TheoremReport rep = start("L3.3", spec_name);
  Stopwatch sw(rep);
  hyp(rep, "M normal", is_normal(m));
  hyp(rep, "N normal", is_normal(n));
  hyp(rep, "M abelian", is_abelian(m));
  hyp(rep, "[N, M] trivial", commutator_subgroup(n, m).order() == 1);
  if (!hyps_ok(rep)) return rep;

  std::vector<Automorphism> box = aut_box(g, m, n, lim);
  QuotientGroup q = quotient(g, n);

  bool ok = true;
  std::set<std::vector<int>> value_maps;
  for (const Automorphism& f : box) {
    std::vector<int> vals(q.cosets.size(), -1);
    for (size_t c = 0; ok && c < q.cosets.size(); ++c) {
      for (int rep_elem : q.cosets[c]) {
        int v = g->mul(g->inv(rep_elem), f(rep_elem));
        ok = ok && m.contains(v);
        if (vals[c] == -1)
          vals[c] = v;
        else
          ok = ok && vals[c] == v;  // all representatives must agree
      }
    }
    if (!ok) break;
    value_maps.insert(std::move(vals));
  }
  ok = ok && value_maps.size() == box.size();

  wit(rep, "box_order", box.size());
  wit(rep, "quotient_order", q.cosets.size());
  rep.conclusion = ok;
  return rep;
}

TheoremReport check_t34(const GroupPtr& g, const Subgroup& m, const Subgroup& n,
                        const std::string& spec_name, const Limits& lim) {
  TheoremReport rep = start("T3.4", spec_name);
  Stopwatch sw(rep);
  hyp(rep, "M central", is_central(m));
  hyp(rep, "M contained in N", subgroup_subset(m, n));
  hyp(rep, "N normal", is_normal(n));
  if (!hyps_ok(rep)) return rep;

  CentralHomContext ctx = make_central_hom_context(g, m, n);
  std::vector<Automorphism> box = aut_box(g, m, n, lim);
  HomSet homs = enumerate_homs(ctx.quot.group, ctx.msag.group);

  bool ok = box.size() == homs.members.size();
  std::vector<Morphism> alphas;
  std::set<std::vector<int>> alpha_images;
  for (const Automorphism& f : box) {
    Morphism al = alpha_of(f, ctx);
    ok = ok && homset_contains(homs, al.image);
    Automorphism back = automorphism_from_hom(al, ctx);
    ok = ok && back.image == f.image;
    alpha_images.insert(al.image);
    alphas.push_back(std::move(al));
  }
  ok = ok && alpha_images.size() == box.size();

  for (const Morphism& psi : homs.members) {
    Automorphism f = automorphism_from_hom(psi, ctx);
    ok = ok && find_automorphism(box, f.image).has_value();
    Morphism again = alpha_of(f, ctx);
    ok = ok && again.image == psi.image;
  }

  for (size_t i = 0; ok && i < box.size(); ++i)
    for (size_t l = 0; ok && l < box.size(); ++l) {
      Morphism left = alpha_of(compose(box[i], box[l]), ctx);
      Morphism right = pointwise_product(alphas[i], alphas[l]);
      ok = left.image == right.image;
    }

  wit(rep, "box_order", box.size());
  wit(rep, "hom_order", homs.members.size());
  rep.conclusion = ok;
  return rep;
}

TheoremReport check_t35(const GroupPtr& g, const Subgroup& h_sub, int n,
                        const std::string& spec_name, const Limits& lim) {
  TheoremReport rep = start("T3.5", spec_name);
  Stopwatch sw(rep);
  verify_t35_core(rep, g, h_sub, n, lim);
  return rep;
}

TheoremReport check_c36(const GroupPtr& g, const std::string& spec_name, const Limits& lim) {
  TheoremReport rep = start("C3.6", spec_name);
  Stopwatch sw(rep);
  std::optional<int> cls = nilpotency_class(g);
  hyp(rep, "nilpotent", cls.has_value());
  hyp(rep, "class at least 2", cls.has_value() && *cls >= 2);
  if (!hyps_ok(rep)) return rep;
  verify_t35_core(rep, g, center(g), *cls, lim);
  return rep;
}

TheoremReport check_t41(const GroupPtr& g, int n, const std::string& spec_name,
                        const Limits& lim) {
  TheoremReport rep = start("T4.1", spec_name);
  Stopwatch sw(rep);
  verify_s4_equality(rep, g, n, /*use_box=*/false, /*conclude_iso=*/true, lim);
  return rep;
}

TheoremReport check_c42(const GroupPtr& g, const std::string& spec_name, const Limits& lim) {
  TheoremReport rep = start("C4.2", spec_name);
  Stopwatch sw(rep);
  require_nonabelian_p_group(g);
  hyp(rep, "non-abelian p-group", true);

  std::vector<Automorphism> ac = aut_class_preserving(g, 1, lim);
  std::vector<Automorphism> acent = autcent(g, lim);
  const bool lhs = aut_lists_equal(ac, acent);

  Subgroup g2 = gamma_k(g, 2);
  Subgroup z = center(g);
  const bool g2_eq_z = subgroup_equal(g2, z);
  bool iso = false;
  if (g2_eq_z) {
    QuotientHoms qh = enumerate_homs_from_quotient(g, z, g2);
    iso = iso_test(automorphism_list_group(ac), homset_group(qh.homs), lim);
    wit(rep, "hom_gz_gamma2_order", qh.homs.members.size());
  }
  const bool rhs = g2_eq_z && iso;

  wit(rep, "aut_c_order", ac.size());
  wit(rep, "autcent_order", acent.size());
  wit(rep, "equality", lhs);
  wit(rep, "gamma_2_eq_center", g2_eq_z);
  if (g2_eq_z) wit(rep, "iso_with_hom", iso);

  bool concl = lhs == rhs;
  if (subgroup_subset(g2, z)) {
    const long long e_g2 = exponent(g2);
    const long long e_gz = quotient(g, z).group->exponent();
    const long long e_gg2 = quotient(g, g2).group->exponent();
    wit(rep, "exp_gamma2", e_g2);
    wit(rep, "exp_G_mod_center", e_gz);
    wit(rep, "exp_G_mod_gamma2", e_gg2);
    concl = concl && e_g2 == e_gz && e_gz <= e_gg2;
  }
  rep.conclusion = concl;
  return rep;
}

TheoremReport check_l43(const GroupPtr& g, int n, const std::string& spec_name,
                        const Limits& lim) {
  TheoremReport rep = start("L4.3", spec_name);
  Stopwatch sw(rep);
  require_nonabelian_p_group(g);
  hyp(rep, "non-abelian p-group", true);
  hyp(rep, "n >= 2", n >= 2);
  wit(rep, "n", static_cast<long long>(n));
  if (n < 2) return rep;

  Subgroup gn = gamma_k(g, n);
  Subgroup z = center(g);
  std::vector<Automorphism> box = aut_box(g, gn, z, lim);
  std::vector<Automorphism> acent = autcent(g, lim);
  const bool eq = aut_lists_equal(box, acent);
  wit(rep, "aut_box_order", box.size());
  wit(rep, "autcent_order", acent.size());
  hyp(rep, "box equals the central automorphism group", eq);
  if (!eq) return rep;

  PurelyNonabelianResult pn = purely_nonabelian_test(g, lim);
  const bool gn_le_z = subgroup_subset(gn, z);
  wit(rep, "purely_non_abelian", pn.purely);
  wit(rep, "gamma_n_le_center", gn_le_z);
  if (!pn.purely && pn.witness)
    wit(rep, "abelian_direct_factor",
        "H " + subgroup_desc(pn.witness->first) + ", A " + subgroup_desc(pn.witness->second));
  rep.conclusion = pn.purely && gn_le_z;
  return rep;
}

TheoremReport check_t44(const GroupPtr& g, int n, const std::string& spec_name,
                        const Limits& lim) {
  TheoremReport rep = start("T4.4", spec_name);
  Stopwatch sw(rep);
  verify_s4_equality(rep, g, n, /*use_box=*/true, /*conclude_iso=*/false, lim);
  return rep;
}

TheoremReport check_c45(const GroupPtr& g, const std::string& spec_name, const Limits& lim) {
  TheoremReport rep = start("C4.5", spec_name);
  Stopwatch sw(rep);
  require_nonabelian_p_group(g);
  hyp(rep, "non-abelian p-group", true);

  Subgroup g2 = gamma_k(g, 2);
  Subgroup z = center(g);
  std::vector<Automorphism> box = aut_box(g, g2, z, lim);
  std::vector<Automorphism> acent = autcent(g, lim);
  const bool lhs = aut_lists_equal(box, acent);
  const bool rhs = subgroup_equal(g2, z);

  wit(rep, "aut_box_order", box.size());
  wit(rep, "autcent_order", acent.size());
  wit(rep, "equality", lhs);
  wit(rep, "gamma_2_eq_center", rhs);
  rep.conclusion = lhs == rhs;
  return rep;
}

TheoremReport check_l21(const GroupPtr& g, const std::string& spec_name, const Limits& lim) {
  TheoremReport rep = start("L2.1", spec_name);
  Stopwatch sw(rep);
  (void)lim;
  std::optional<int> cls = nilpotency_class(g);
  hyp(rep, "nilpotent", cls.has_value());
  hyp(rep, "class at least 2", cls.has_value() && *cls >= 2);
  if (!hyps_ok(rep)) return rep;

  Subgroup gn = gamma_k(g, *cls);
  const long long e_gamma = exponent(gn);
  const long long e_gz = quotient(g, center(g)).group->exponent();
  wit(rep, "class", static_cast<long long>(*cls));
  wit(rep, "exp_gamma_class", e_gamma);
  wit(rep, "exp_G_mod_center", e_gz);
  bool concl = e_gz % e_gamma == 0;
  if (*cls == 2) concl = concl && e_gamma == e_gz;
  rep.conclusion = concl;
  return rep;
}

TheoremReport check_l22(const GroupPtr& g, const Subgroup& h, const Subgroup& k,
                        const std::string& spec_name, const Limits& lim) {
  TheoremReport rep = start("L2.2", spec_name);
  Stopwatch sw(rep);
  (void)lim;
  hyp(rep, "H contained in K", subgroup_subset(h, k));
  hyp(rep, "H normal", is_normal(h));
  hyp(rep, "K normal", is_normal(k));
  if (!hyps_ok(rep)) return rep;

  const long long e_k = quotient(g, k).group->exponent();
  const long long e_h = quotient(g, h).group->exponent();
  wit(rep, "exp_G_mod_K", e_k);
  wit(rep, "exp_G_mod_H", e_h);
  rep.conclusion = e_h % e_k == 0;
  return rep;
}

TheoremReport check_l23(const GroupPtr& h, const GroupPtr& k, const std::string& spec_name,
                        const Limits& lim) {
  TheoremReport rep = start("L2.3", spec_name);
  Stopwatch sw(rep);
  hyp(rep, "second factor abelian", k->is_abelian());
  hyp(rep, "first factor nontrivial", h->order() > 1);
  if (!hyps_ok(rep)) return rep;

  ProductStructure ps = direct_product({h, k}, lim);
  std::optional<int> ch = nilpotency_class(h);
  std::optional<int> cp = nilpotency_class(ps.product);
  wit(rep, "class_first_factor", ch ? std::to_string(*ch) : "not nilpotent");
  wit(rep, "class_product", cp ? std::to_string(*cp) : "not nilpotent");
  rep.conclusion = ch == cp;
  return rep;
}

const std::vector<std::string>& all_theorem_ids() {
  static const std::vector<std::string> ids = {
      "T2.4", "L2.5", "L2.6", "T3.1", "T3.2", "L3.3", "T3.4", "T3.5", "C3.6",
      "T4.1", "C4.2", "L4.3", "T4.4", "C4.5", "L2.1", "L2.2", "L2.3"};
  return ids;
}

namespace {

struct ProductSplit {
  ProductStructure ps;
  GroupPtr first;
  GroupPtr rest;
};

std::optional<ProductSplit> split_product(const CatalogEntry& entry, const Limits& lim) {
  if (entry.spec.factors.size() < 2) return std::nullopt;
  GroupSpec head{{entry.spec.factors[0]}};
  GroupSpec tail{{entry.spec.factors.begin() + 1, entry.spec.factors.end()}};
  ProductSplit out{ProductStructure{}, construct(head, lim), construct(tail, lim)};
  out.ps = direct_product({out.first, out.rest}, lim);
  return out;
}

// Default n for the series-indexed statements: the nilpotency class, but
// never below 2.
int default_n(const GroupPtr& g) {
  std::optional<int> cls = nilpotency_class(g);
  return std::max(cls.value_or(2), 2);
}

std::vector<TheoremReport> dispatch_checks(const CatalogEntry& entry,
                                           const std::string& theorem_id,
                                           std::optional<int> n_override, const Limits& lim) {
  const GroupPtr& g = entry.group;
  const std::string& name = entry.name;
  const bool nonabelian_p = prime_power_order(g) && !g->is_abelian();

  if (theorem_id == "T2.4") return {check_adney_yen(g, name, lim)};

  if (theorem_id == "L2.5") {
    auto split = split_product(entry, lim);
    if (!split) return {not_applicable("L2.5", name, "input is a direct product")};
    return {check_bidwell(split->first, split->rest, name, lim)};
  }

  if (theorem_id == "L2.6") {
    if (!prime_power_order(g))
      return {not_applicable("L2.6", name, "prime-power order")};
    return {check_l26(g, n_override.value_or(default_n(g)), name, lim)};
  }

  if (theorem_id == "T3.1") {
    auto split = split_product(entry, lim);
    if (!split) return {not_applicable("T3.1", name, "input is a direct product")};
    Subgroup m = gamma_k(split->first, 2);
    Subgroup n = center(split->first);
    return {check_t31(split->ps, 0, m, n, name, lim)};
  }

  if (theorem_id == "T3.2") {
    auto split = split_product(entry, lim);
    if (!split) return {not_applicable("T3.2", name, "input is a direct product")};
    return {check_t32(split->first, split->rest, n_override.value_or(2), name, lim)};
  }

  if (theorem_id == "L3.3") return {check_l33(g, center(g), gamma_k(g, 2), name, lim)};

  if (theorem_id == "T3.4")
    return {check_t34(g, subgroup_intersection(gamma_k(g, 2), center(g)), center(g), name, lim)};

  if (theorem_id == "T3.5") {
    if (!nilpotency_class(g).has_value())
      return {not_applicable("T3.5", name, "nilpotent")};
    int n = n_override.value_or(default_n(g));
    return {check_t35(g, gamma_k(g, n), n, name, lim)};
  }

  if (theorem_id == "C3.6") return {check_c36(g, name, lim)};

  if (theorem_id == "T4.1" || theorem_id == "T4.4" || theorem_id == "L4.3") {
    if (!nonabelian_p)
      return {not_applicable(theorem_id, name, "non-abelian p-group")};
    std::vector<int> ns;
    if (n_override)
      ns.push_back(*n_override);
    else
      for (int n = 2; n <= default_n(g); ++n) ns.push_back(n);
    std::vector<TheoremReport> out;
    for (int n : ns) {
      if (theorem_id == "T4.1") out.push_back(check_t41(g, n, name, lim));
      if (theorem_id == "T4.4") out.push_back(check_t44(g, n, name, lim));
      if (theorem_id == "L4.3") out.push_back(check_l43(g, n, name, lim));
    }
    return out;
  }

  if (theorem_id == "C4.2" || theorem_id == "C4.5") {
    if (!nonabelian_p)
      return {not_applicable(theorem_id, name, "non-abelian p-group")};
    if (theorem_id == "C4.2") return {check_c42(g, name, lim)};
    return {check_c45(g, name, lim)};
  }

  if (theorem_id == "L2.1") return {check_l21(g, name, lim)};

  if (theorem_id == "L2.2") {
    Subgroup z = center(g);
    Subgroup g2 = gamma_k(g, 2);
    Subgroup h = subgroup_subset(g2, z) ? g2 : subgroup_intersection(g2, z);
    return {check_l22(g, h, z, name, lim)};
  }

  if (theorem_id == "L2.3") {
    auto split = split_product(entry, lim);
    if (!split) return {not_applicable("L2.3", name, "input is a direct product")};
    return {check_l23(split->first, split->rest, name, lim)};
  }

  fail(Err::BadParameter, "unknown theorem id " + theorem_id);
}

}  // namespace

std::vector<TheoremReport> run_checks_for_group(const CatalogEntry& entry,
                                                const std::string& theorem_id,
                                                std::optional<int> n_override, const Limits& lim) {
  try {
    return dispatch_checks(entry, theorem_id, n_override, lim);
  } catch (const Error& e) {
    switch (e.code()) {
      case Err::OrderCapExceeded:
      case Err::NotPGroup:
      case Err::NotNonabelian:
      case Err::HypothesisViolated:
        return {not_applicable(theorem_id, entry.name, "within enumeration caps and input domain",
                               e.what())};
      default:
        throw;
    }
  }
}

std::vector<TheoremReport> run_corpus(const CorpusOptions& opt, const Limits& lim) {
  for (const std::string& id : opt.theorem_ids) {
    const auto& ids = all_theorem_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end())
      fail(Err::BadParameter, "unknown theorem id " + id);
  }

  std::vector<CatalogEntry> entries = builtin_catalog(opt.max_order, lim);
  std::vector<std::vector<TheoremReport>> per_entry(entries.size());
  if (!opt.theorem_ids.empty()) {
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto worker = [&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= entries.size()) return;
        try {
          for (const std::string& id : opt.theorem_ids) {
            std::vector<TheoremReport> got = run_checks_for_group(entries[i], id, std::nullopt, lim);
            per_entry[i].insert(per_entry[i].end(), got.begin(), got.end());
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    unsigned hw = std::thread::hardware_concurrency();
    size_t n_threads = std::min<size_t>(std::max(1u, hw), entries.size());
    std::vector<std::thread> pool;
    for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::vector<TheoremReport> out;
  for (std::vector<TheoremReport>& v : per_entry)
    for (TheoremReport& r : v) out.push_back(std::move(r));
  return out;
}

bool any_failed(const std::vector<TheoremReport>& reports) {
  for (const TheoremReport& r : reports)
    if (r.failed()) return true;
  return false;
}

std::string reports_to_json(const std::vector<TheoremReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TheoremReport& r : reports) {
    nlohmann::json jr;
    jr["theorem"] = r.theorem_id;
    jr["group"] = r.group_spec;
    jr["status"] = r.status();
    nlohmann::json hs = nlohmann::json::array();
    for (const auto& [name, holds] : r.hypotheses) hs.push_back({{"name", name}, {"holds", holds}});
    jr["hypotheses"] = std::move(hs);
    jr["hypotheses_ok"] = r.hypotheses_ok();
    if (r.hypotheses_ok())
      jr["conclusion"] = r.conclusion;
    else
      jr["conclusion"] = nullptr;
    nlohmann::json ws = nlohmann::json::object();
    for (const auto& [k, v] : r.witnesses) ws[k] = v;
    jr["witnesses"] = std::move(ws);
    jr["wall_ms"] = r.wall_ms;
    arr.push_back(std::move(jr));
  }
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["reports"] = std::move(arr);
  return doc.dump(2) + "\n";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string reports_to_csv(const std::vector<TheoremReport>& reports) {
  std::ostringstream out;
  out << "group,theorem,hypotheses-ok,conclusion,wall-time-ms\n";
  for (const TheoremReport& r : reports) {
    const bool ok = r.hypotheses_ok();
    out << csv_field(r.group_spec) << ',' << csv_field(r.theorem_id) << ','
        << (ok ? "true" : "false") << ',' << (ok ? (r.conclusion ? "true" : "false") : "n/a")
        << ',' << r.wall_ms << '\n';
  }
  return out.str();
}

}  // namespace groupscope

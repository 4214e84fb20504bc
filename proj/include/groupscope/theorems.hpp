#pragma once

#include <optional>
#include <string>
#include <vector>

#include "groupscope/aut.hpp"
#include "groupscope/catalog.hpp"
#include "groupscope/hom.hpp"

namespace groupscope {

// Outcome of one check run. Hypotheses are always evaluated first; the
// conclusion is asserted (and meaningful) only when every hypothesis holds.
//
//   OK             — hypotheses hold and the conclusion was verified
//   NOT-APPLICABLE — some hypothesis fails; nothing is asserted
//   FAILED         — hypotheses hold but the conclusion is false (a genuine
//                    counterexample to the statement under test)
struct TheoremReport {
  std::string theorem_id;
  std::string group_spec;
  std::vector<std::pair<std::string, bool>> hypotheses;
  bool conclusion = false;
  std::vector<std::pair<std::string, std::string>> witnesses;
  double wall_ms = 0.0;

  bool hypotheses_ok() const;
  bool failed() const { return hypotheses_ok() && !conclusion; }
  const char* status() const;
};

// Brute-force isomorphism test on Cayley tables: backtracking image search
// with element-order-profile pruning. Unequal orders simply return false;
// orders above the automorphism hard cap raise OrderCapExceeded.
bool iso_test(const GroupPtr& a, const GroupPtr& b, const Limits& lim = default_limits());

// --- Individual checkers. Each evaluates its hypotheses, then verifies the
// --- statement's conclusion by exhaustive computation.

// T2.4: purely non-abelian G — |Autcent(G)| = |Hom(G, Z(G))|.
TheoremReport check_adney_yen(const GroupPtr& g, const std::string& spec_name = "",
                              const Limits& lim = default_limits());

// L2.5: H, K with no common nontrivial direct factor —
// |Autcent(H×K)| = |Autcent(H)|·|Autcent(K)|·|Hom(H,Z(K))|·|Hom(K,Z(H))|.
TheoremReport check_bidwell(const GroupPtr& h, const GroupPtr& k, const std::string& spec_name = "",
                            const Limits& lim = default_limits());

// L2.6: for abelian p-groups H <= K and nontrivial abelian p-group D,
// |Hom(D,H)| = |Hom(D,K)|  <=>  H = K or (d(H) = d(K) and exp(D) <= var(H,K)).
// Instantiated on D = G/gamma_2, H = gamma_n(G), K = Z(G).
TheoremReport check_l26(const GroupPtr& g, int n, const std::string& spec_name = "",
                        const Limits& lim = default_limits());

// T3.1: restriction to factor j is a group isomorphism
// Aut_N^M(G) -> Aut_{N_j}^{M_j}(H_j) for the product-shaped M and N.
TheoremReport check_t31(const ProductStructure& p, size_t j, const Subgroup& m_j,
                        const Subgroup& n_j, const std::string& spec_name = "",
                        const Limits& lim = default_limits());

// T3.2: G = H×A with H purely non-abelian, A abelian nontrivial — restriction
// maps Aut_{Z(G)}^{gamma_n(G)}(G) isomorphically onto Aut_{Z(H)}^{gamma_n(H)}(H)
// and carries the class-preserving subgroups onto each other.
TheoremReport check_t32(const GroupPtr& h, const GroupPtr& a, int n,
                        const std::string& spec_name = "", const Limits& lim = default_limits());

// L3.3: M, N normal, M abelian, [N,M] = 1 — alpha_f(gN) = g^-1 f(g) is
// well-defined on cosets for every f in Aut_N^M(G), and f -> alpha_f is
// injective.
TheoremReport check_l33(const GroupPtr& g, const Subgroup& m, const Subgroup& n,
                        const std::string& spec_name = "", const Limits& lim = default_limits());

// T3.4: M central, M <= N normal — f -> alpha_f is a group isomorphism
// Aut_N^M(G) -> Hom(G/N, M), verified elementwise with its inverse.
TheoremReport check_t34(const GroupPtr& g, const Subgroup& m, const Subgroup& n,
                        const std::string& spec_name = "", const Limits& lim = default_limits());

// T3.5: G nilpotent of class <= n (n >= 2), gamma_n <= H <= Z(G) —
// f -> alpha_f carries Aut_c^{n-1}(G) bijectively onto Hom_c(G/H, gamma_n).
TheoremReport check_t35(const GroupPtr& g, const Subgroup& h_sub, int n,
                        const std::string& spec_name = "", const Limits& lim = default_limits());

// C3.6: the H = Z(G) instance of T3.5 at n = class(G).
TheoremReport check_c36(const GroupPtr& g, const std::string& spec_name = "",
                        const Limits& lim = default_limits());

// T4.1: non-abelian p-group, n >= 2. If Aut_c^{n-1}(G) = Autcent(G) then
// gamma_n <= Z and d(gamma_n) = d(Z); if additionally exp(G/gamma_2) >
// var(gamma_n, Z) then gamma_n = Z and Aut_c^{n-1}(G) ~= Hom(G/Z, gamma_n).
// Conversely the equality follows from gamma_n = Z plus that isomorphism.
TheoremReport check_t41(const GroupPtr& g, int n, const std::string& spec_name = "",
                        const Limits& lim = default_limits());

// C4.2: non-abelian p-group — Aut_c(G) = Autcent(G) iff gamma_2 = Z and
// Aut_c(G) ~= Hom(G/Z, gamma_2); plus the exponent chain
// exp(gamma_2) = exp(G/Z) <= exp(G/gamma_2) when gamma_2 <= Z.
TheoremReport check_c42(const GroupPtr& g, const std::string& spec_name = "",
                        const Limits& lim = default_limits());

// L4.3: non-abelian p-group, n >= 2, Aut_{Z}^{gamma_n}(G) = Autcent(G) —
// G is purely non-abelian and gamma_n <= Z.
TheoremReport check_l43(const GroupPtr& g, int n, const std::string& spec_name = "",
                        const Limits& lim = default_limits());

// T4.4: as T4.1 with Aut_{Z}^{gamma_n}(G) in place of Aut_c^{n-1}(G); the
// converse needs only gamma_n = Z.
TheoremReport check_t44(const GroupPtr& g, int n, const std::string& spec_name = "",
                        const Limits& lim = default_limits());

// C4.5: non-abelian p-group — Aut_{Z}^{gamma_2}(G) = Autcent(G) iff
// gamma_2 = Z.
TheoremReport check_c45(const GroupPtr& g, const std::string& spec_name = "",
                        const Limits& lim = default_limits());

// L2.1 (exponent relation): nilpotent G of class c >= 2 — exp(gamma_c)
// divides exp(G/Z), with equality at class 2. Note the divisibility cannot be
// strengthened to the reverse direction: Q(16) has exp(G/Z) = 4 but
// exp(gamma_3) = 2.
TheoremReport check_l21(const GroupPtr& g, const std::string& spec_name = "",
                        const Limits& lim = default_limits());

// L2.2: normal H <= K — exp(G/K) divides exp(G/H).
TheoremReport check_l22(const GroupPtr& g, const Subgroup& h, const Subgroup& k,
                        const std::string& spec_name = "", const Limits& lim = default_limits());

// L2.3: K abelian, H nontrivial — class(H×K) = class(H) (both sides may be
// "not nilpotent").
TheoremReport check_l23(const GroupPtr& h, const GroupPtr& k, const std::string& spec_name = "",
                        const Limits& lim = default_limits());

// --- Corpus plumbing.

// The identifiers accepted by run_checks_for_group, in report order.
const std::vector<std::string>& all_theorem_ids();

// Instantiates one theorem id on a catalog entry (the per-group default
// instantiation; n_override replaces the derived n where one applies).
// Structural mismatches (wrong input shape for the statement) come back as
// NOT-APPLICABLE reports, never exceptions.
std::vector<TheoremReport> run_checks_for_group(const CatalogEntry& entry,
                                                const std::string& theorem_id,
                                                std::optional<int> n_override = std::nullopt,
                                                const Limits& lim = default_limits());

struct CorpusOptions {
  int max_order = 64;
  std::vector<std::string> theorem_ids;  // empty -> empty report list
};

// Every requested checker over every catalog group within the bound;
// aggregation is ordered by (group order, group spec, theorem id).
std::vector<TheoremReport> run_corpus(const CorpusOptions& opt,
                                      const Limits& lim = default_limits());

bool any_failed(const std::vector<TheoremReport>& reports);

// {"schema": 1, "reports": [...]} — the stable report serialization.
std::string reports_to_json(const std::vector<TheoremReport>& reports);

// Columns: group, theorem, hypotheses-ok, conclusion, wall-time-ms.
std::string reports_to_csv(const std::vector<TheoremReport>& reports);

}  // namespace groupscope

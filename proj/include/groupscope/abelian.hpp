#pragma once

#include <optional>
#include <vector>

#include "groupscope/group.hpp"

namespace groupscope {

// Invariants of a finite abelian p-group: G ~= C_{p^{n_1}} x ... x C_{p^{n_s}}
// with n_1 >= n_2 >= ... >= n_s, plus explicit generators realizing the
// decomposition as an internal direct sum.
struct AbelianPInvariants {
  long long prime = 0;         // 0 for the trivial group
  std::vector<int> exponents;  // weakly decreasing, each >= 1
  std::vector<int> basis;      // element indices, basis[i] has order p^exponents[i]
};

int rank(const AbelianPInvariants& inv);

// exp(G) = p^{n_1}; 1 for the trivial group.
long long exponent(const AbelianPInvariants& inv);

// Cyclic decomposition of an abelian prime-power-order group. The Subgroup
// overload reports basis elements as parent indices.
AbelianPInvariants abelian_invariants(const GroupPtr& g);
AbelianPInvariants abelian_invariants(const Subgroup& s);

// The gap statistic for an equal-rank pair sub <= super (componentwise
// n_i <= m_i): 1 when the exponent lists are equal, else p^{n_r} where r is
// the largest index with n_r < m_r.
long long var_statistic(const AbelianPInvariants& sub, const AbelianPInvariants& super);

// |Hom(A, B)| = prod_{i,j} p^{min(n_i, m_j)} for abelian p-groups of the same
// prime; 1 when either side is trivial.
unsigned long long hom_order(const AbelianPInvariants& a, const AbelianPInvariants& b);

// The Hom-equality criterion: with H a subgroup of K (both abelian p-groups,
// same prime as the nontrivial abelian p-group G),
//   |Hom(G,H)| = |Hom(G,K)|  <=>  H = K, or d(H) = d(K) and exp(G) <= var(H,K).
// Computes both sides independently and throws Internal if they ever disagree
// (which would falsify the equivalence). G must be nontrivial: for G = 1 the
// left side always holds while the right side can fail, so the equivalence is
// genuinely false in that degenerate case and the call is rejected
// (HypothesisViolated) instead.
struct HomEqualityRecord {
  bool hom_equal = false;
  bool criterion = false;
  std::optional<int> r;  // 1-based index used by var, when var was evaluated
  unsigned long long hom_h = 1;
  unsigned long long hom_k = 1;
  long long var_hk = 0;  // 0 when var was not evaluated
};
HomEqualityRecord hom_equality_test(const AbelianPInvariants& g, const AbelianPInvariants& h,
                                    const AbelianPInvariants& k);

// Basis of an arbitrary finite abelian group (not necessarily prime-power
// order): generators of an internal direct sum of cyclic groups, primary
// components in ascending prime order, exponents descending within a prime.
struct AbelianBasis {
  std::vector<int> gens;
  std::vector<int> orders;  // orders[i] = order of gens[i]; product = |G|
};
AbelianBasis abelian_basis(const GroupPtr& g);

}  // namespace groupscope

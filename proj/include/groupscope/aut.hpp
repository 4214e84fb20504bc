#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "groupscope/group.hpp"
#include "groupscope/hom.hpp"

namespace groupscope {

// A bijective endomorphism, stored as the image permutation.
struct Automorphism {
  GroupPtr group;
  std::vector<int> image;
  int operator()(int x) const { return image[x]; }
  bool operator==(const Automorphism& o) const { return group == o.group && image == o.image; }
};

Automorphism identity_automorphism(const GroupPtr& g);
Automorphism compose(const Automorphism& f, const Automorphism& g);  // x -> f(g(x))
Automorphism inverse_of(const Automorphism& f);
Automorphism conjugation_by(const GroupPtr& g, int x);  // t -> x^-1 t x

// All automorphisms, canonically ordered (lexicographic image arrays).
// Enumeration is a generator-image backtracking search with candidate images
// restricted to equal-order elements. Order cap: warning above the soft cap,
// OrderCapExceeded above the hard cap. Closure under composition and inverse
// is verified on the result (pairwise up to a size bound, above which only
// inverse-closure is verified and a warning is emitted).
std::vector<Automorphism> automorphism_group(const GroupPtr& g,
                                             const Limits& lim = default_limits());

// Automorphisms with g^-1 f(g) in Z(G) for every g. Computed by filtering the
// full automorphism list, then asserted equal to the independently searched
// aut_box(G, Z(G), gamma_2(G)).
std::vector<Automorphism> autcent(const GroupPtr& g, const Limits& lim = default_limits());

// Automorphisms f where every f(g) is conjugate to g by some element of
// gamma_n(G) (the conjugator may depend on g). n = 1 is the classical
// class-preserving group.
std::vector<Automorphism> aut_class_preserving(const GroupPtr& g, int n,
                                               const Limits& lim = default_limits());

// { f in Aut(G) : f(M) = M, g^-1 f(g) in M for all g, f fixes N elementwise }.
// M and N must be normal.
std::vector<Automorphism> aut_box(const GroupPtr& g, const Subgroup& m, const Subgroup& n,
                                  const Limits& lim = default_limits());

// Plumbing shared by the correspondence maps below: M a central subgroup,
// N a normal subgroup of the same group, with G/N and M-as-group built once.
struct CentralHomContext {
  GroupPtr g;
  Subgroup m;
  Subgroup n;
  QuotientGroup quot;     // G/N
  SubgroupAsGroup msag;   // M as a standalone group
};
CentralHomContext make_central_hom_context(const GroupPtr& g, const Subgroup& m,
                                           const Subgroup& n);

// alpha_f(gN) = g^-1 f(g), a homomorphism G/N -> M for f in Aut_N^M(G) with M
// central. Well-definedness is verified on every coset representative;
// NotMember if f fails the Aut_N^M membership predicate.
Morphism alpha_of(const Automorphism& f, const CentralHomContext& ctx);
Morphism alpha_of(const Automorphism& f, const Subgroup& n, const Subgroup& m);

// f_psi(g) = g * psi(gN), the inverse construction; requires M <= N (else the
// map need not be injective). The result is verified to be an automorphism in
// Aut_N^M(G).
Automorphism automorphism_from_hom(const Morphism& psi, const CentralHomContext& ctx);

// Restriction of f in Aut_N^M(G) to factor j of a direct product, where
// M = 1 x ... x M_j x ... x 1 and N = H_1 x ... x N_j x ... x H_k are built
// from the supplied factor subgroups: alpha_f(h_j) = pi_j(f(embed_j(h_j))).
// The result lies in Aut_{N_j}^{M_j}(H_j) (verified).
Automorphism restrict_product_automorphism(const ProductStructure& p, const Automorphism& f,
                                           size_t j, const Subgroup& m_j, const Subgroup& n_j);

// The section of the restriction: applies psi on factor j and the identity
// elsewhere.
Automorphism lift_product_automorphism(const ProductStructure& p, const Automorphism& psi,
                                       size_t j);

// Builds the product-shaped subgroups M = 1 x ... x M_j x ... x 1 and
// N = H_1 x ... x N_j x ... x H_k used by the restriction correspondence.
Subgroup embed_factor_subgroup(const ProductStructure& p, const Subgroup& m_j, size_t j);
Subgroup spread_factor_subgroup(const ProductStructure& p, const Subgroup& n_j, size_t j);

// Searches for a nontrivial abelian direct factor: purely = false iff
// G = H x A internally with A abelian nontrivial (both normal, trivial
// intersection, orders multiplying to |G|). Witness returned when found.
struct PurelyNonabelianResult {
  bool purely = false;
  std::optional<std::pair<Subgroup, Subgroup>> witness;  // (H, A)
};
PurelyNonabelianResult purely_nonabelian_test(const GroupPtr& g,
                                              const Limits& lim = default_limits());

// Cayley table of an automorphism list under composition; element i is
// auts[i]. The list must be closed (any full enumeration above is).
GroupPtr automorphism_list_group(const std::vector<Automorphism>& auts);

// Canonical-order list comparison.
bool aut_lists_equal(const std::vector<Automorphism>& a, const std::vector<Automorphism>& b);

// Binary search in a canonically ordered list.
std::optional<size_t> find_automorphism(const std::vector<Automorphism>& auts,
                                        const std::vector<int>& image);

}  // namespace groupscope

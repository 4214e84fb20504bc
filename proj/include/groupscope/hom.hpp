#pragma once

#include <vector>

#include "groupscope/abelian.hpp"
#include "groupscope/group.hpp"

namespace groupscope {

// A complete, canonically ordered set of homomorphisms with a fixed domain
// and abelian codomain. Members are sorted lexicographically by image array;
// the set is an abelian group under the pointwise product.
struct HomSet {
  GroupPtr domain;
  GroupPtr codomain;
  std::vector<Morphism> members;
};

// G / gamma_2(G).
QuotientGroup abelianization(const GroupPtr& g);

// Pointwise group law on morphisms into an abelian codomain.
Morphism trivial_morphism(const GroupPtr& domain, const GroupPtr& codomain);
Morphism pointwise_product(const Morphism& f, const Morphism& g);
Morphism pointwise_inverse(const Morphism& f);

// Every homomorphism G -> A (A abelian), via the abelianization of G and a
// cyclic basis of it: a basis element of order d may map to any d-torsion
// element of A, and images iterate in increasing element-index order.
HomSet enumerate_homs(const GroupPtr& g, const GroupPtr& a);

// Hom(G/N, M) together with the quotient and subgroup-as-group plumbing
// needed to interpret its members inside G.
struct QuotientHoms {
  QuotientGroup quot;        // G/N
  SubgroupAsGroup codomain;  // M as a standalone group
  HomSet homs;               // domain = quot.group, codomain = codomain.group
};
QuotientHoms enumerate_homs_from_quotient(const GroupPtr& g, const Subgroup& n, const Subgroup& m);

// The commutator-valued subset of Hom(G/H, gamma_n(G)): members f with
// f(gH) in {[g,x] : x in gamma_{n-1}(G)} for every g in G. The membership
// test runs over all g in G — the value f(gH) depends only on the coset, but
// the commutator set can vary with the representative. Requires G nilpotent
// of class <= n and gamma_n(G) <= H <= Z(G).
struct HomCSubset {
  QuotientGroup quot;        // G/H
  SubgroupAsGroup gamma_n;   // gamma_n(G) as a standalone group
  HomSet all;                // full Hom(G/H, gamma_n(G))
  HomSet members;            // the commutator-valued subset
};
HomCSubset hom_c_subset(const GroupPtr& g, const Subgroup& h, int n);

// Materializes a HomSet as a FiniteGroup under the pointwise product
// (members must be the full closed set, e.g. any enumerate_homs output).
// Element i of the result corresponds to members[i].
GroupPtr homset_group(const HomSet& hs);

}  // namespace groupscope

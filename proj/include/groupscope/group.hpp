#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groupscope/errors.hpp"

namespace groupscope {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Hard bounds for the expensive enumerations.
///
/// * `max_order`       — largest Cayley table that may be constructed and
///                       validated (full associativity scan).
/// * `aut_soft_cap`    — automorphism searches run silently up to this order.
/// * `aut_hard_cap`    — between the soft and hard cap a warning is emitted;
///                       beyond it the search refuses to run.
/// * `subgroup_search_cap` — bound for whole-lattice subgroup scans
///                       (direct-factor searches and (M, N) pair sweeps).
struct Limits {
  int max_order = 256;
  int aut_soft_cap = 64;
  int aut_hard_cap = 128;
  int subgroup_search_cap = 64;
};

/// Process-wide defaults. GROUPSCOPE_MAX_ORDER in the environment overrides
/// `max_order` (read once, at first use).
const Limits& default_limits();

using WarningHandler = void (*)(const std::string&);

/// Replace the warning sink (pass nullptr to restore the stderr default).
void set_warning_handler(WarningHandler h);
void emit_warning(const std::string& msg);

/// A finite group given by its full multiplication table.
///
/// Elements are the indices 0..order-1 and index 0 is always the identity.
/// Instances are immutable after construction and safe to share across
/// threads. The constructor validates the group axioms; use build_group()
/// for raw tables whose identity may sit at an arbitrary index.
class FiniteGroup {
public:
  /// Validates shape, identity at index 0, associativity and inverses.
  /// Throws Err::NotAGroup (with the violating triple) or
  /// Err::OrderCapExceeded.
  FiniteGroup(std::vector<int> flat_table, int order, std::vector<std::string> labels,
              const Limits& lim);

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[a * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  static constexpr int identity = 0;

  /// g raised to an arbitrary (possibly negative) integer power.
  int pow(int g, long long e) const;

  int element_order(int g) const { return elem_order_[g]; }
  bool is_abelian() const { return abelian_; }

  /// Least n >= 1 with g^n = 1 for every g (lcm of element orders).
  int exponent() const;

  /// Optional display names, one per element (empty if unset).
  const std::vector<std::string>& labels() const { return labels_; }

  const std::vector<int>& flat_table() const { return table_; }

private:
  int order_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> elem_order_;
  std::vector<std::string> labels_;
  bool abelian_ = false;
};

/// Validate a square table and wrap it as a FiniteGroup. If the identity is
/// not at index 0 the elements are relabelled by swapping; the permutation
/// applied (new index -> old index) is written to *relabeling when requested.
GroupPtr build_group(const std::vector<std::vector<int>>& table,
                     std::vector<std::string> labels = {},
                     const Limits& lim = default_limits(),
                     std::vector<int>* relabeling = nullptr);

GroupPtr build_group_flat(std::vector<int> flat_table, int order,
                          std::vector<std::string> labels = {},
                          const Limits& lim = default_limits());

/// A map between groups, stored as the image of every domain element.
/// make_morphism() validates the homomorphism property.
struct Morphism {
  GroupPtr domain;
  GroupPtr codomain;
  std::vector<int> image;

  int operator()(int x) const { return image[x]; }
};

Morphism make_morphism(GroupPtr domain, GroupPtr codomain, std::vector<int> image);

/// A subgroup of a fixed parent group: sorted member list plus a membership
/// mask. Construction validates closure, identity and inverses.
class Subgroup {
public:
  Subgroup(GroupPtr parent, std::vector<int> members);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<int>& members() const { return members_; }
  int order() const { return static_cast<int>(members_.size()); }
  bool contains(int g) const { return mask_[g] != 0; }
  const std::vector<unsigned char>& mask() const { return mask_; }

private:
  GroupPtr parent_;
  std::vector<int> members_;
  std::vector<unsigned char> mask_;
};

bool same_parent(const Subgroup& a, const Subgroup& b);
bool subgroup_subset(const Subgroup& a, const Subgroup& b);  // a <= b
bool subgroup_equal(const Subgroup& a, const Subgroup& b);
Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b);

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup full_subgroup(const GroupPtr& g);

/// Closure of a generating set (identity always included).
Subgroup subgroup_generate(const GroupPtr& g, const std::vector<int>& gens);

Subgroup center(const GroupPtr& g);
bool is_normal(const Subgroup& s);
bool is_central(const Subgroup& s);
bool is_abelian(const Subgroup& s);
int exponent(const Subgroup& s);

/// Subgroup generated by all commutators [a, b] = a^-1 b^-1 a b with
/// a in `a`, b in `b`. Both must live in the same parent.
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);

/// [gamma_1, ..., gamma_n] with gamma_1 = G and gamma_{i+1} = [gamma_i, G].
std::vector<Subgroup> lower_central_series(const GroupPtr& g, int n);

/// Least c with gamma_{c+1} = 1, or nullopt when the series stabilises
/// above the trivial subgroup.
std::optional<int> nilpotency_class(const GroupPtr& g);

/// A quotient G/N: coset partition (each coset sorted, cosets ordered by
/// their minimal member, so the identity coset is element 0), the quotient
/// group itself and the projection homomorphism.
struct QuotientGroup {
  GroupPtr base;
  Subgroup kernel;
  std::vector<std::vector<int>> cosets;
  GroupPtr group;
  Morphism projection;

  int coset_of(int g) const { return projection.image[g]; }
  int rep_of(int c) const { return cosets[c].front(); }
};

/// Throws Err::NotNormal when N is not normal in G.
QuotientGroup quotient(const GroupPtr& g, const Subgroup& n);

/// A direct product with its projections and embeddings. Element indices
/// enumerate tuples lexicographically, first factor varying slowest.
struct ProductStructure {
  std::vector<GroupPtr> factors;
  GroupPtr product;
  std::vector<Morphism> projections;
  std::vector<Morphism> embeddings;

  int component(int g, int j) const { return projections[j].image[g]; }
  int tuple_index(const std::vector<int>& components) const;
};

ProductStructure direct_product(const std::vector<GroupPtr>& factors,
                                const Limits& lim = default_limits());

/// A subgroup materialised as a standalone group. to_parent maps the new
/// element indices back to the parent; from_parent is the inverse (-1 on
/// non-members).
struct SubgroupAsGroup {
  GroupPtr group;
  std::vector<int> to_parent;
  std::vector<int> from_parent;
};

SubgroupAsGroup subgroup_as_group(const Subgroup& s);

/// Every subgroup / every normal subgroup of G, ordered by (order, members).
/// Throws Err::OrderCapExceeded above lim.subgroup_search_cap.
std::vector<Subgroup> all_subgroups(const GroupPtr& g, const Limits& lim = default_limits());
std::vector<Subgroup> normal_subgroups(const GroupPtr& g, const Limits& lim = default_limits());

}  // namespace groupscope

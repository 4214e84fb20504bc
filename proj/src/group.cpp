#include "groupscope/group.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <unordered_set>

namespace groupscope {

const char* err_name(Err e) {
  switch (e) {
    case Err::NotAGroup: return "NotAGroup";
    case Err::MismatchedParent: return "MismatchedParent";
    case Err::NotNormal: return "NotNormal";
    case Err::OrderCapExceeded: return "OrderCapExceeded";
    case Err::NotAbelian: return "NotAbelian";
    case Err::NotPrimePower: return "NotPrimePower";
    case Err::RankMismatch: return "RankMismatch";
    case Err::NotComponentwiseDominated: return "NotComponentwiseDominated";
    case Err::PrimeMismatch: return "PrimeMismatch";
    case Err::NotAbelianCodomain: return "NotAbelianCodomain";
    case Err::HypothesisViolated: return "HypothesisViolated";
    case Err::NotCentral: return "NotCentral";
    case Err::NotMember: return "NotMember";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::NotPGroup: return "NotPGroup";
    case Err::NotNonabelian: return "NotNonabelian";
    case Err::ParseError: return "ParseError";
    case Err::BadParameter: return "BadParameter";
    case Err::SchemaError: return "SchemaError";
    case Err::IoError: return "IoError";
    case Err::Overflow: return "Overflow";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

void default_warning(const std::string& msg) {
  std::fprintf(stderr, "groupscope: warning: %s\n", msg.c_str());
}

std::atomic<WarningHandler> g_warning_handler{&default_warning};

}  // namespace

void set_warning_handler(WarningHandler h) {
  g_warning_handler.store(h ? h : &default_warning);
}

void emit_warning(const std::string& msg) { g_warning_handler.load()(msg); }

const Limits& default_limits() {
  static const Limits lim = [] {
    Limits l;
    if (const char* env = std::getenv("GROUPSCOPE_MAX_ORDER")) {
      int v = std::atoi(env);
      if (v >= 1) l.max_order = v;
    }
    return l;
  }();
  return lim;
}

FiniteGroup::FiniteGroup(std::vector<int> flat_table, int order, std::vector<std::string> labels,
                         const Limits& lim)
    : order_(order), table_(std::move(flat_table)), labels_(std::move(labels)) {
  if (order_ < 1) fail(Err::NotAGroup, "order must be at least 1");
  if (order_ > lim.max_order)
    fail(Err::OrderCapExceeded, "order " + std::to_string(order_) + " exceeds cap " +
                                    std::to_string(lim.max_order));
  if (static_cast<long long>(table_.size()) != static_cast<long long>(order_) * order_)
    fail(Err::NotAGroup, "table is not order x order");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != order_)
    fail(Err::NotAGroup, "label count does not match order");
  for (int v : table_)
    if (v < 0 || v >= order_) fail(Err::NotAGroup, "table entry out of range");

  for (int j = 0; j < order_; ++j)
    if (mul(0, j) != j || mul(j, 0) != j)
      fail(Err::NotAGroup, "element 0 is not a two-sided identity");

  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) {
      const int ij = mul(i, j);
      for (int k = 0; k < order_; ++k)
        if (mul(ij, k) != mul(i, mul(j, k)))
          fail(Err::NotAGroup, "associativity fails at triple (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ", " + std::to_string(k) + ")");
    }

  inverse_.assign(order_, -1);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b)
      if (mul(a, b) == identity && mul(b, a) == identity) {
        inverse_[a] = b;
        break;
      }
    if (inverse_[a] < 0)
      fail(Err::NotAGroup, "element " + std::to_string(a) + " has no two-sided inverse");
  }

  elem_order_.assign(order_, 0);
  for (int g = 0; g < order_; ++g) {
    int acc = g, ord = 1;
    while (acc != identity) {
      acc = mul(acc, g);
      ++ord;
    }
    elem_order_[g] = ord;
  }

  abelian_ = true;
  for (int i = 0; i < order_ && abelian_; ++i)
    for (int j = i + 1; j < order_; ++j)
      if (mul(i, j) != mul(j, i)) {
        abelian_ = false;
        break;
      }
}

int FiniteGroup::pow(int g, long long e) const {
  const int ord = elem_order_[g];
  long long r = e % ord;
  if (r < 0) r += ord;
  int acc = identity;
  for (long long i = 0; i < r; ++i) acc = mul(acc, g);
  return acc;
}

int FiniteGroup::exponent() const {
  long long e = 1;
  for (int g = 0; g < order_; ++g) e = std::lcm(e, static_cast<long long>(elem_order_[g]));
  return static_cast<int>(e);
}

GroupPtr build_group_flat(std::vector<int> flat_table, int order, std::vector<std::string> labels,
                          const Limits& lim) {
  return std::make_shared<FiniteGroup>(std::move(flat_table), order, std::move(labels), lim);
}

GroupPtr build_group(const std::vector<std::vector<int>>& table, std::vector<std::string> labels,
                     const Limits& lim, std::vector<int>* relabeling) {
  const int n = static_cast<int>(table.size());
  if (n < 1) fail(Err::NotAGroup, "empty table");
  std::vector<int> flat;
  flat.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) fail(Err::NotAGroup, "table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) fail(Err::NotAGroup, "table entry out of range");
      flat.push_back(v);
    }
  }

  // Locate the identity; relabel by a swap when it is not element 0.
  int e = -1;
  for (int c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j)
      if (flat[c * n + j] != j || flat[j * n + c] != j) ok = false;
    if (ok) e = c;
  }
  if (e < 0) fail(Err::NotAGroup, "no two-sided identity element");

  std::vector<int> perm(n);  // new index -> old index
  for (int i = 0; i < n; ++i) perm[i] = i;
  if (e != 0) {
    std::swap(perm[0], perm[e]);
    std::vector<int> relflat(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int v = flat[perm[i] * n + perm[j]];
        relflat[i * n + j] = v == e ? 0 : (v == 0 ? e : v);
      }
    flat = std::move(relflat);
    if (!labels.empty()) std::swap(labels[0], labels[e]);
  }
  if (relabeling) *relabeling = perm;
  return build_group_flat(std::move(flat), n, std::move(labels), lim);
}

Morphism make_morphism(GroupPtr domain, GroupPtr codomain, std::vector<int> image) {
  if (!domain || !codomain) fail(Err::Internal, "morphism with null endpoint");
  const int n = domain->order();
  if (static_cast<int>(image.size()) != n) fail(Err::ShapeMismatch, "image size != domain order");
  for (int v : image)
    if (v < 0 || v >= codomain->order()) fail(Err::ShapeMismatch, "image entry out of range");
  if (image[FiniteGroup::identity] != FiniteGroup::identity)
    fail(Err::NotMember, "map does not send identity to identity");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (image[domain->mul(x, y)] != codomain->mul(image[x], image[y]))
        fail(Err::NotMember, "map is not a homomorphism at (" + std::to_string(x) + ", " +
                                 std::to_string(y) + ")");
  return Morphism{std::move(domain), std::move(codomain), std::move(image)};
}

Subgroup::Subgroup(GroupPtr parent, std::vector<int> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  if (!parent_) fail(Err::Internal, "subgroup with null parent");
  const int n = parent_->order();
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty()) fail(Err::NotAGroup, "subgroup must be nonempty");
  mask_.assign(n, 0);
  for (int m : members_) {
    if (m < 0 || m >= n) fail(Err::NotMember, "subgroup member out of range");
    mask_[m] = 1;
  }
  if (!mask_[FiniteGroup::identity]) fail(Err::NotAGroup, "subgroup is missing the identity");
  for (int a : members_) {
    if (!mask_[parent_->inv(a)]) fail(Err::NotAGroup, "subgroup is not closed under inverses");
    for (int b : members_)
      if (!mask_[parent_->mul(a, b)]) fail(Err::NotAGroup, "subgroup is not closed under products");
  }
}

bool same_parent(const Subgroup& a, const Subgroup& b) { return a.parent() == b.parent(); }

bool subgroup_subset(const Subgroup& a, const Subgroup& b) {
  if (!same_parent(a, b)) fail(Err::MismatchedParent, "subgroups of different groups");
  for (int m : a.members())
    if (!b.contains(m)) return false;
  return true;
}

bool subgroup_equal(const Subgroup& a, const Subgroup& b) {
  if (!same_parent(a, b)) fail(Err::MismatchedParent, "subgroups of different groups");
  return a.members() == b.members();
}

Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b) {
  if (!same_parent(a, b)) fail(Err::MismatchedParent, "subgroups of different groups");
  std::vector<int> members;
  for (int g : a.members())
    if (b.contains(g)) members.push_back(g);
  return Subgroup(a.parent(), std::move(members));
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {FiniteGroup::identity}); }

Subgroup full_subgroup(const GroupPtr& g) {
  std::vector<int> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(g, std::move(all));
}

namespace {

// Closure of a seed set under multiplication (inverses come for free in a
// finite group). Returns a sorted member list.
std::vector<int> closure(const FiniteGroup& g, const std::vector<int>& seed) {
  std::vector<unsigned char> mask(g.order(), 0);
  std::vector<int> elems;
  auto add = [&](int x) {
    if (!mask[x]) {
      mask[x] = 1;
      elems.push_back(x);
    }
  };
  add(FiniteGroup::identity);
  for (int s : seed) add(s);
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      add(g.mul(elems[i], elems[j]));
      add(g.mul(elems[j], elems[i]));
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

}  // namespace

Subgroup subgroup_generate(const GroupPtr& g, const std::vector<int>& gens) {
  for (int x : gens)
    if (x < 0 || x >= g->order()) fail(Err::NotMember, "generator out of range");
  return Subgroup(g, closure(*g, gens));
}

Subgroup center(const GroupPtr& g) {
  std::vector<int> z;
  const int n = g->order();
  for (int a = 0; a < n; ++a) {
    bool central = true;
    for (int b = 0; b < n && central; ++b)
      if (g->mul(a, b) != g->mul(b, a)) central = false;
    if (central) z.push_back(a);
  }
  return Subgroup(g, std::move(z));
}

bool is_normal(const Subgroup& s) {
  const FiniteGroup& g = *s.parent();
  for (int x = 0; x < g.order(); ++x) {
    const int xi = g.inv(x);
    for (int m : s.members())
      if (!s.contains(g.mul(xi, g.mul(m, x)))) return false;
  }
  return true;
}

bool is_central(const Subgroup& s) {
  const FiniteGroup& g = *s.parent();
  for (int m : s.members())
    for (int b = 0; b < g.order(); ++b)
      if (g.mul(m, b) != g.mul(b, m)) return false;
  return true;
}

bool is_abelian(const Subgroup& s) {
  const FiniteGroup& g = *s.parent();
  for (int a : s.members())
    for (int b : s.members())
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

int exponent(const Subgroup& s) {
  long long e = 1;
  for (int m : s.members()) e = std::lcm(e, static_cast<long long>(s.parent()->element_order(m)));
  return static_cast<int>(e);
}

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
  if (!same_parent(a, b)) fail(Err::MismatchedParent, "commutator of subgroups of different groups");
  const FiniteGroup& g = *a.parent();
  std::vector<int> gens;
  std::vector<unsigned char> seen(g.order(), 0);
  for (int x : a.members())
    for (int y : b.members()) {
      // [x, y] = x^-1 y^-1 x y
      const int c = g.mul(g.inv(x), g.mul(g.inv(y), g.mul(x, y)));
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  return Subgroup(a.parent(), closure(g, gens));
}

std::vector<Subgroup> lower_central_series(const GroupPtr& g, int n) {
  if (n < 1) fail(Err::BadParameter, "series length must be at least 1");
  std::vector<Subgroup> series;
  series.push_back(full_subgroup(g));
  const Subgroup whole = full_subgroup(g);
  for (int i = 1; i < n; ++i) series.push_back(commutator_subgroup(series.back(), whole));
  return series;
}

namespace {

std::vector<Subgroup> series_to_stabilization(const GroupPtr& g) {
  std::vector<Subgroup> series;
  series.push_back(full_subgroup(g));
  const Subgroup whole = full_subgroup(g);
  while (true) {
    Subgroup next = commutator_subgroup(series.back(), whole);
    if (subgroup_equal(next, series.back())) break;
    series.push_back(std::move(next));
    if (series.back().order() == 1) break;
  }
  return series;
}

}  // namespace

std::optional<int> nilpotency_class(const GroupPtr& g) {
  const auto series = series_to_stabilization(g);
  if (series.back().order() != 1) return std::nullopt;
  // gamma_{c+1} = 1 first at index c (0-based index c = term gamma_{c+1}).
  return static_cast<int>(series.size()) - 1;
}

QuotientGroup quotient(const GroupPtr& g, const Subgroup& n) {
  if (n.parent() != g) fail(Err::MismatchedParent, "kernel does not belong to this group");
  if (!is_normal(n)) fail(Err::NotNormal, "quotient by a non-normal subgroup");

  const int order = g->order();
  std::vector<int> coset_idx(order, -1);
  std::vector<std::vector<int>> cosets;
  for (int x = 0; x < order; ++x) {
    if (coset_idx[x] >= 0) continue;
    std::vector<int> coset;
    for (int m : n.members()) coset.push_back(g->mul(x, m));
    std::sort(coset.begin(), coset.end());
    const int idx = static_cast<int>(cosets.size());
    for (int y : coset) coset_idx[y] = idx;
    cosets.push_back(std::move(coset));
  }

  const int q = static_cast<int>(cosets.size());
  std::vector<int> table(static_cast<size_t>(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      table[i * q + j] = coset_idx[g->mul(cosets[i][0], cosets[j][0])];

  GroupPtr qg = build_group_flat(std::move(table), q, {}, default_limits());
  Morphism proj = make_morphism(g, qg, coset_idx);
  return QuotientGroup{g, n, std::move(cosets), std::move(qg), std::move(proj)};
}

int ProductStructure::tuple_index(const std::vector<int>& components) const {
  if (components.size() != factors.size()) fail(Err::ShapeMismatch, "component count mismatch");
  int idx = 0;
  for (size_t j = 0; j < factors.size(); ++j) {
    const int nj = factors[j]->order();
    if (components[j] < 0 || components[j] >= nj) fail(Err::NotMember, "component out of range");
    idx = idx * nj + components[j];
  }
  return idx;
}

namespace {

// Checks that a structural subgroup of the product is exactly the set of
// elements whose every component lies in the corresponding factor subgroup.
void verify_componentwise(const ProductStructure& p, const Subgroup& got,
                          const std::vector<Subgroup>& factor_parts, const char* what) {
  const int n = p.product->order();
  for (int x = 0; x < n; ++x) {
    bool expect = true;
    for (size_t j = 0; j < p.factors.size() && expect; ++j)
      if (!factor_parts[j].contains(p.component(x, j))) expect = false;
    if (expect != (got.contains(x) != 0))
      fail(Err::Internal, std::string("product ") + what + " does not factor componentwise");
  }
}

}  // namespace

ProductStructure direct_product(const std::vector<GroupPtr>& factors, const Limits& lim) {
  if (factors.empty()) fail(Err::BadParameter, "product needs at least one factor");
  long long total = 1;
  for (const auto& f : factors) {
    total *= f->order();
    if (total > lim.max_order)
      fail(Err::OrderCapExceeded,
           "product order exceeds cap " + std::to_string(lim.max_order));
  }
  const int n = static_cast<int>(total);
  const int k = static_cast<int>(factors.size());

  // Decompose a product index into components (first factor slowest).
  std::vector<int> strides(k, 1);
  for (int j = k - 2; j >= 0; --j) strides[j] = strides[j + 1] * factors[j + 1]->order();
  auto comp = [&](int x, int j) { return (x / strides[j]) % factors[j]->order(); };

  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int idx = 0;
      for (int j = 0; j < k; ++j)
        idx = idx * factors[j]->order() + factors[j]->mul(comp(x, j), comp(y, j));
      table[x * n + y] = idx;
    }

  std::vector<std::string> labels;
  bool have_labels = true;
  for (const auto& f : factors)
    if (f->labels().empty()) have_labels = false;
  if (have_labels) {
    labels.resize(n);
    for (int x = 0; x < n; ++x) {
      std::string s = "(";
      for (int j = 0; j < k; ++j) {
        if (j) s += ",";
        s += factors[j]->labels()[comp(x, j)];
      }
      s += ")";
      labels[x] = std::move(s);
    }
  }

  ProductStructure p;
  p.factors = factors;
  p.product = build_group_flat(std::move(table), n, std::move(labels), lim);

  for (int j = 0; j < k; ++j) {
    std::vector<int> proj(n);
    for (int x = 0; x < n; ++x) proj[x] = comp(x, j);
    p.projections.push_back(make_morphism(p.product, factors[j], std::move(proj)));

    std::vector<int> emb(factors[j]->order());
    for (int h = 0; h < factors[j]->order(); ++h) emb[h] = h * strides[j];
    p.embeddings.push_back(make_morphism(factors[j], p.product, std::move(emb)));

    for (int h = 0; h < factors[j]->order(); ++h)
      if (p.projections[j].image[p.embeddings[j].image[h]] != h)
        fail(Err::Internal, "projection does not invert embedding");
  }

  // Structural sanity: centre and lower central terms factor componentwise.
  {
    std::vector<Subgroup> fz;
    for (const auto& f : factors) {
      Subgroup zf = center(f);
      fz.push_back(std::move(zf));
    }
    verify_componentwise(p, center(p.product), fz, "centre");

    std::vector<std::vector<Subgroup>> fs;
    size_t depth = 0;
    for (const auto& f : factors) {
      fs.push_back(series_to_stabilization(f));
      depth = std::max(depth, fs.back().size());
    }
    auto prod_series = series_to_stabilization(p.product);
    depth = std::max(depth, prod_series.size());
    for (size_t level = 0; level < depth; ++level) {
      std::vector<Subgroup> parts;
      for (const auto& s : fs) parts.push_back(s[std::min(level, s.size() - 1)]);
      const Subgroup& got = prod_series[std::min(level, prod_series.size() - 1)];
      verify_componentwise(p, got, parts, "lower central term");
    }
  }

  return p;
}

SubgroupAsGroup subgroup_as_group(const Subgroup& s) {
  const FiniteGroup& g = *s.parent();
  const int m = s.order();
  std::vector<int> from_parent(g.order(), -1);
  for (int i = 0; i < m; ++i) from_parent[s.members()[i]] = i;

  std::vector<int> table(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) table[i * m + j] = from_parent[g.mul(s.members()[i], s.members()[j])];

  std::vector<std::string> labels;
  if (!g.labels().empty()) {
    for (int i = 0; i < m; ++i) labels.push_back(g.labels()[s.members()[i]]);
  }
  // Members are sorted, so the parent identity (0) lands at index 0.
  GroupPtr grp = build_group_flat(std::move(table), m, std::move(labels), default_limits());
  return SubgroupAsGroup{std::move(grp), s.members(), std::move(from_parent)};
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g, const Limits& lim) {
  if (g->order() > lim.subgroup_search_cap)
    fail(Err::OrderCapExceeded, "subgroup lattice scan capped at order " +
                                    std::to_string(lim.subgroup_search_cap));
  std::unordered_set<std::string> seen;
  std::vector<std::vector<int>> found;

  auto key_of = [&](const std::vector<int>& members) {
    std::string key(g->order(), '0');
    for (int m : members) key[m] = '1';
    return key;
  };
  auto add = [&](std::vector<int> members) {
    std::string key = key_of(members);
    if (seen.insert(std::move(key)).second) found.push_back(std::move(members));
  };

  add({FiniteGroup::identity});
  for (size_t i = 0; i < found.size(); ++i)
    for (int x = 0; x < g->order(); ++x) {
      if (std::binary_search(found[i].begin(), found[i].end(), x)) continue;
      std::vector<int> seed = found[i];
      seed.push_back(x);
      add(closure(*g, seed));
    }

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& members : found) out.emplace_back(g, std::move(members));
  return out;
}

std::vector<Subgroup> normal_subgroups(const GroupPtr& g, const Limits& lim) {
  std::vector<Subgroup> out;
  for (auto& s : all_subgroups(g, lim))
    if (is_normal(s)) out.push_back(std::move(s));
  return out;
}

}  // namespace groupscope

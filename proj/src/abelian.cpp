#include "groupscope/abelian.hpp"

#include <algorithm>
#include <functional>

namespace groupscope {

namespace {

// order = p^m for prime p; returns {p, m} or fails with NotPrimePower.
std::pair<long long, int> prime_power(int order) {
  if (order == 1) return {0, 0};
  long long p = 0;
  for (long long d = 2; d * d <= order; ++d)
    if (order % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = order;  // order itself is prime
  int m = 0;
  int rest = order;
  while (rest % p == 0) {
    rest = static_cast<int>(rest / p);
    ++m;
  }
  if (rest != 1) fail(Err::NotPrimePower, "order " + std::to_string(order) + " is not a prime power");
  return {p, m};
}

int log_exact(long long base, long long value) {
  int e = 0;
  while (value > 1) {
    if (value % base != 0) fail(Err::Internal, "count is not a power of the prime");
    value /= base;
    ++e;
  }
  return e;
}

}  // namespace

int rank(const AbelianPInvariants& inv) { return static_cast<int>(inv.exponents.size()); }

long long exponent(const AbelianPInvariants& inv) {
  if (inv.exponents.empty()) return 1;
  long long r = 1;
  for (int i = 0; i < inv.exponents[0]; ++i) r *= inv.prime;
  return r;
}

AbelianPInvariants abelian_invariants(const GroupPtr& g) {
  if (!g->is_abelian()) fail(Err::NotAbelian, "invariants require an abelian group");
  const int n = g->order();
  if (n == 1) return AbelianPInvariants{};
  const auto [p, m] = prime_power(n);

  // Exponents from the counting identity #{x : x^{p^k} = 1} = p^{sum_i min(k, n_i)}:
  // s_k - s_{k-1} = #{i : n_i >= k}, the conjugate partition.
  std::vector<int> s;  // s[k] = log_p #{x : x^{p^k} = 1}
  s.push_back(0);
  long long pk = 1;
  while (true) {
    pk *= p;
    int count = 0;
    for (int x = 0; x < n; ++x)
      if (g->pow(x, pk) == FiniteGroup::identity) ++count;
    s.push_back(log_exact(p, count));
    if (count == n) break;
  }
  std::vector<int> exponents;
  const int d = s[1] - s[0];
  for (int i = 1; i <= d; ++i) {
    int ni = 0;
    for (size_t k = 1; k < s.size(); ++k)
      if (s[k] - s[k - 1] >= i) ni = static_cast<int>(k);
    exponents.push_back(ni);
  }
  // (weakly decreasing by construction)

  // Basis: greedy descent with backtracking. A candidate b of order p^{n_i}
  // extends the current internal direct sum exactly when b^{p^{n_i - 1}} lies
  // outside the span (trivial intersection of <b> with the span).
  std::vector<unsigned char> span_mask(n, 0);
  span_mask[FiniteGroup::identity] = 1;
  std::vector<int> span_elems{FiniteGroup::identity};
  std::vector<int> basis;

  std::function<bool(size_t)> place = [&](size_t slot) -> bool {
    if (slot == exponents.size()) return static_cast<int>(span_elems.size()) == n;
    long long target = 1;
    for (int i = 0; i < exponents[slot]; ++i) target *= p;
    for (int b = 0; b < n; ++b) {
      if (g->element_order(b) != target || span_mask[b]) continue;
      if (span_mask[g->pow(b, target / p)]) continue;
      const size_t old_size = span_elems.size();
      for (long long t = 1; t < target; ++t) {
        const int bt = g->pow(b, t);
        for (size_t idx = 0; idx < old_size; ++idx) {
          const int fresh = g->mul(span_elems[idx], bt);
          if (span_mask[fresh]) fail(Err::Internal, "span extension collision");
          span_mask[fresh] = 1;
          span_elems.push_back(fresh);
        }
      }
      basis.push_back(b);
      if (place(slot + 1)) return true;
      basis.pop_back();
      while (span_elems.size() > old_size) {
        span_mask[span_elems.back()] = 0;
        span_elems.pop_back();
      }
    }
    return false;
  };
  if (!place(0)) fail(Err::Internal, "basis extraction failed");

  return AbelianPInvariants{p, std::move(exponents), std::move(basis)};
}

AbelianPInvariants abelian_invariants(const Subgroup& s) {
  SubgroupAsGroup sag = subgroup_as_group(s);
  AbelianPInvariants inv = abelian_invariants(sag.group);
  for (int& b : inv.basis) b = sag.to_parent[b];
  return inv;
}

long long var_statistic(const AbelianPInvariants& sub, const AbelianPInvariants& super) {
  if (rank(sub) != rank(super))
    fail(Err::RankMismatch, "var requires equal ranks (" + std::to_string(rank(sub)) + " vs " +
                                std::to_string(rank(super)) + ")");
  if (sub.exponents.empty()) return 1;
  if (sub.prime != super.prime) fail(Err::PrimeMismatch, "var requires a common prime");
  for (size_t i = 0; i < sub.exponents.size(); ++i)
    if (sub.exponents[i] > super.exponents[i])
      fail(Err::NotComponentwiseDominated,
           "var requires componentwise domination (index " + std::to_string(i + 1) + ")");
  if (sub.exponents == super.exponents) return 1;
  int r = -1;
  for (size_t i = 0; i < sub.exponents.size(); ++i)
    if (sub.exponents[i] < super.exponents[i]) r = static_cast<int>(i);
  long long v = 1;
  for (int i = 0; i < sub.exponents[r]; ++i) v *= sub.prime;
  return v;
}

unsigned long long hom_order(const AbelianPInvariants& a, const AbelianPInvariants& b) {
  if (a.exponents.empty() || b.exponents.empty()) return 1;
  if (a.prime != b.prime) fail(Err::PrimeMismatch, "hom_order requires a common prime");
  long long e = 0;
  for (int ni : a.exponents)
    for (int mj : b.exponents) e += std::min(ni, mj);
  unsigned long long r = 1;
  const auto p = static_cast<unsigned long long>(a.prime);
  for (long long i = 0; i < e; ++i) {
    if (r > ~0ULL / p) fail(Err::Overflow, "hom order exceeds 64 bits");
    r *= p;
  }
  return r;
}

HomEqualityRecord hom_equality_test(const AbelianPInvariants& g, const AbelianPInvariants& h,
                                    const AbelianPInvariants& k) {
  if (g.exponents.empty())
    fail(Err::HypothesisViolated,
         "hom-equality criterion requires nontrivial G (for G = 1 both Hom sets are trivially "
         "equal while the rank condition can fail)");
  if (!k.exponents.empty() && g.prime != k.prime)
    fail(Err::PrimeMismatch, "hom-equality test requires a common prime");
  if (!h.exponents.empty() && !k.exponents.empty() && h.prime != k.prime)
    fail(Err::PrimeMismatch, "hom-equality test requires a common prime");
  if (h.exponents.size() > k.exponents.size())
    fail(Err::NotComponentwiseDominated, "H does not embed in K (rank too large)");
  for (size_t i = 0; i < h.exponents.size(); ++i)
    if (h.exponents[i] > k.exponents[i])
      fail(Err::NotComponentwiseDominated,
           "H does not embed in K (index " + std::to_string(i + 1) + ")");

  HomEqualityRecord rec;
  rec.hom_h = hom_order(g, h);
  rec.hom_k = hom_order(g, k);
  rec.hom_equal = rec.hom_h == rec.hom_k;

  if (h.exponents == k.exponents) {
    rec.criterion = true;
  } else if (rank(h) == rank(k)) {
    rec.var_hk = var_statistic(h, k);
    int r = -1;
    for (size_t i = 0; i < h.exponents.size(); ++i)
      if (h.exponents[i] < k.exponents[i]) r = static_cast<int>(i);
    rec.r = r + 1;
    rec.criterion = exponent(g) <= rec.var_hk;
  } else {
    rec.criterion = false;
  }

  if (rec.hom_equal != rec.criterion)
    fail(Err::Internal, "hom-equality criterion disagreed with the enumerated counts");
  return rec;
}

AbelianBasis abelian_basis(const GroupPtr& g) {
  if (!g->is_abelian()) fail(Err::NotAbelian, "basis requires an abelian group");
  const int n = g->order();
  AbelianBasis out;
  if (n == 1) return out;

  std::vector<long long> primes;
  int rest = n;
  for (long long d = 2; d * d <= rest; ++d)
    if (rest % d == 0) {
      primes.push_back(d);
      while (rest % d == 0) rest = static_cast<int>(rest / d);
    }
  if (rest > 1) primes.push_back(rest);

  for (long long q : primes) {
    std::vector<int> members;
    for (int x = 0; x < n; ++x) {
      int o = g->element_order(x);
      while (o % q == 0) o = static_cast<int>(o / q);
      if (o == 1) members.push_back(x);
    }
    Subgroup component(g, std::move(members));
    AbelianPInvariants inv = abelian_invariants(component);
    for (size_t i = 0; i < inv.basis.size(); ++i) {
      out.gens.push_back(inv.basis[i]);
      long long o = 1;
      for (int e = 0; e < inv.exponents[i]; ++e) o *= q;
      out.orders.push_back(static_cast<int>(o));
    }
  }

  long long total = 1;
  for (int o : out.orders) total *= o;
  if (total != n) fail(Err::Internal, "abelian basis orders do not multiply to the group order");
  return out;
}

}  // namespace groupscope

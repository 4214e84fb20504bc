#include "groupscope/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace groupscope {

namespace {

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Returns k with 2^k == v, or -1 when v is not a power of two.
int log2_exact(long long v) {
  int k = 0;
  long long t = 1;
  while (t < v) {
    t *= 2;
    ++k;
  }
  return t == v ? k : -1;
}

long long checked_pow(long long base, long long exp, const Limits& lim) {
  long long r = 1;
  for (long long i = 0; i < exp; ++i) {
    r *= base;
    if (r > lim.max_order)
      fail(Err::OrderCapExceeded, "constructed order exceeds cap " + std::to_string(lim.max_order));
  }
  return r;
}

std::string power_label(const std::string& letter, long long e) {
  if (e == 0) return "";
  if (e == 1) return letter;
  return letter + "^" + std::to_string(e);
}

std::string join_powers(const std::vector<std::pair<std::string, long long>>& parts) {
  std::string out;
  for (const auto& [letter, e] : parts) {
    std::string piece = power_label(letter, e);
    if (piece.empty()) continue;
    if (!out.empty()) out += "*";
    out += piece;
  }
  return out.empty() ? "1" : out;
}

// Group with normal form b^j a^i (j in [0,P), i in [0,M)) and relations
// a^M = 1, b^P = a^S, b^-1 a b = a^T. Requires a^S central and T a unit mod M
// with T^P = 1; the FiniteGroup constructor re-validates the table anyway.
GroupPtr metacyclic_group(long long M, long long P, long long S, long long T, const Limits& lim) {
  const long long n = M * P;
  if (n > lim.max_order)
    fail(Err::OrderCapExceeded, "constructed order exceeds cap " + std::to_string(lim.max_order));
  auto idx = [&](long long j, long long i) { return static_cast<int>(j * M + i); };

  // t_pow[j] = T^j mod M
  std::vector<long long> t_pow(P);
  t_pow[0] = 1 % M;
  for (long long j = 1; j < P; ++j) t_pow[j] = (t_pow[j - 1] * (T % M)) % M;

  std::vector<int> table(static_cast<size_t>(n) * n);
  for (long long j1 = 0; j1 < P; ++j1)
    for (long long i1 = 0; i1 < M; ++i1)
      for (long long j2 = 0; j2 < P; ++j2)
        for (long long i2 = 0; i2 < M; ++i2) {
          long long j = j1 + j2;
          long long i = (i1 * t_pow[j2] + i2) % M;
          if (j >= P) {
            j -= P;
            i = (i + S) % M;
          }
          table[idx(j1, i1) * n + idx(j2, i2)] = idx(j, i);
        }

  std::vector<std::string> labels(n);
  for (long long j = 0; j < P; ++j)
    for (long long i = 0; i < M; ++i) labels[idx(j, i)] = join_powers({{"b", j}, {"a", i}});
  return build_group_flat(std::move(table), static_cast<int>(n), std::move(labels), lim);
}

}  // namespace

GroupPtr cyclic_group(long long n, const Limits& lim) {
  if (n < 1) fail(Err::BadParameter, "C(n) needs n >= 1");
  if (n > lim.max_order)
    fail(Err::OrderCapExceeded, "constructed order exceeds cap " + std::to_string(lim.max_order));
  const int m = static_cast<int>(n);
  std::vector<int> table(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) table[i * m + j] = (i + j) % m;
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = join_powers({{"a", i}});
  return build_group_flat(std::move(table), m, std::move(labels), lim);
}

GroupPtr abelian_p_group(long long p, const std::vector<long long>& exps, const Limits& lim) {
  if (!is_prime(p)) fail(Err::BadParameter, "Ab(p; ...) needs a prime p");
  if (exps.empty()) fail(Err::BadParameter, "Ab(p; ...) needs at least one exponent");
  for (long long e : exps)
    if (e < 1) fail(Err::BadParameter, "Ab exponents must be >= 1");

  std::vector<long long> orders;
  long long n = 1;
  for (long long e : exps) {
    orders.push_back(checked_pow(p, e, lim));
    n *= orders.back();
    if (n > lim.max_order)
      fail(Err::OrderCapExceeded, "constructed order exceeds cap " + std::to_string(lim.max_order));
  }
  const int m = static_cast<int>(n);
  const int k = static_cast<int>(orders.size());

  std::vector<long long> strides(k, 1);
  for (int j = k - 2; j >= 0; --j) strides[j] = strides[j + 1] * orders[j + 1];
  auto comp = [&](int x, int j) { return (x / strides[j]) % orders[j]; };

  std::vector<int> table(static_cast<size_t>(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      long long idx = 0;
      for (int j = 0; j < k; ++j) idx = idx * orders[j] + (comp(x, j) + comp(y, j)) % orders[j];
      table[x * m + y] = static_cast<int>(idx);
    }

  std::vector<std::string> labels(m);
  for (int x = 0; x < m; ++x) {
    std::vector<std::pair<std::string, long long>> parts;
    for (int j = 0; j < k; ++j) parts.emplace_back(std::string(1, static_cast<char>('a' + j % 26)), comp(x, j));
    labels[x] = join_powers(parts);
  }
  return build_group_flat(std::move(table), m, std::move(labels), lim);
}

GroupPtr dihedral_group(long long n, const Limits& lim) {
  if (n < 1) fail(Err::BadParameter, "D(n) needs n >= 1");
  return metacyclic_group(n, 2, 0, (n - 1) % n, lim);
}

GroupPtr quaternion_group(long long order, const Limits& lim) {
  const int k = log2_exact(order);
  if (k < 3) fail(Err::BadParameter, "Q(m) needs m = 2^k with k >= 3");
  const long long M = order / 2;
  return metacyclic_group(M, 2, M / 2, M - 1, lim);
}

GroupPtr semidihedral_group(long long order, const Limits& lim) {
  const int k = log2_exact(order);
  if (k < 4) fail(Err::BadParameter, "SD(m) needs m = 2^k with k >= 4");
  const long long M = order / 2;
  return metacyclic_group(M, 2, 0, M / 2 - 1, lim);
}

GroupPtr modular_group(long long p, long long k, const Limits& lim) {
  if (!is_prime(p)) fail(Err::BadParameter, "Mod(p,k) needs a prime p");
  if (p == 2 && k < 4)
    fail(Err::BadParameter, "Mod(2,k) needs k >= 4 (smaller cases coincide with other families)");
  if (p != 2 && k < 3) fail(Err::BadParameter, "Mod(p,k) needs k >= 3");
  const long long M = checked_pow(p, k - 1, lim);
  const long long T = 1 + M / p;  // 1 + p^(k-2)
  return metacyclic_group(M, p, 0, T, lim);
}

GroupPtr heisenberg_group(long long p, const Limits& lim) {
  if (!is_prime(p)) fail(Err::BadParameter, "Heis(p) needs a prime p");
  const long long n = checked_pow(p, 3, lim);
  const int m = static_cast<int>(n);
  const int pi = static_cast<int>(p);
  auto idx = [&](int x, int y, int z) { return (x * pi + y) * pi + z; };

  std::vector<int> table(static_cast<size_t>(m) * m);
  for (int x1 = 0; x1 < pi; ++x1)
    for (int y1 = 0; y1 < pi; ++y1)
      for (int z1 = 0; z1 < pi; ++z1)
        for (int x2 = 0; x2 < pi; ++x2)
          for (int y2 = 0; y2 < pi; ++y2)
            for (int z2 = 0; z2 < pi; ++z2)
              table[idx(x1, y1, z1) * m + idx(x2, y2, z2)] =
                  idx((x1 + x2) % pi, (y1 + y2) % pi, (z1 + z2 + x1 * y2) % pi);

  std::vector<std::string> labels(m);
  for (int x = 0; x < pi; ++x)
    for (int y = 0; y < pi; ++y)
      for (int z = 0; z < pi; ++z)
        labels[idx(x, y, z)] =
            "(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
  return build_group_flat(std::move(table), m, std::move(labels), lim);
}

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  [[noreturn]] void error(const std::string& what, size_t at) {
    fail(Err::ParseError, what + " at position " + std::to_string(at));
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  long long parse_int() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) error("expected integer", start);
    if (pos - start > 12) error("integer too long", start);
    return std::stoll(text.substr(start, pos - start));
  }

  std::string parse_name() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) error("expected constructor name", start);
    return text.substr(start, pos - start);
  }

  // True when the next token is the product operator 'x'. A bare "x" before
  // another factor; tolerates the unspaced form "D(4)xC(2)".
  bool eat_product_op() {
    skip_ws();
    if (pos < text.size() && text[pos] == 'x') {
      ++pos;
      return true;
    }
    return false;
  }

  GroupSpec::Node parse_atom_node() {
    std::string name = parse_name();
    size_t at = pos;
    if (!eat('(')) error("expected '(' after constructor name", at);
    GroupSpec::Node node;
    node.ctor = name;
    if (name == "Ab") {
      node.args.push_back(parse_int());
      at = pos;
      if (!eat(';')) error("expected ';' after prime in Ab(p; ...)", at);
      node.args.push_back(parse_int());
      while (eat(',')) node.args.push_back(parse_int());
    } else {
      node.args.push_back(parse_int());
      while (eat(',')) node.args.push_back(parse_int());
    }
    at = pos;
    if (!eat(')')) error("expected ')'", at);
    return node;
  }

  void parse_product(GroupSpec& out) {
    skip_ws();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      parse_product(out);
      size_t at = pos;
      if (!eat(')')) error("expected ')'", at);
    } else {
      out.factors.push_back(parse_atom_node());
    }
    while (true) {
      size_t save = pos;
      skip_ws();
      if (pos >= text.size()) return;
      if (text[pos] == ')') {
        pos = save;
        return;
      }
      if (!eat_product_op()) error("expected 'x' between factors", pos);
      skip_ws();
      if (pos < text.size() && text[pos] == '(') {
        ++pos;
        GroupSpec inner;
        parse_product(inner);
        size_t at = pos;
        if (!eat(')')) error("expected ')'", at);
        for (auto& f : inner.factors) out.factors.push_back(std::move(f));
      } else {
        out.factors.push_back(parse_atom_node());
      }
    }
  }
};

void validate_node_shape(const GroupSpec::Node& n) {
  const std::string& c = n.ctor;
  const size_t k = n.args.size();
  if (c == "C" || c == "D" || c == "Q" || c == "SD" || c == "Heis") {
    if (k != 1) fail(Err::BadParameter, c + " takes exactly one argument");
  } else if (c == "Mod") {
    if (k != 2) fail(Err::BadParameter, "Mod takes exactly two arguments");
  } else if (c == "Ab") {
    if (k < 2) fail(Err::BadParameter, "Ab needs a prime and at least one exponent");
  } else {
    fail(Err::BadParameter, "unknown constructor '" + c + "'");
  }
}

GroupPtr construct_node(const GroupSpec::Node& n, const Limits& lim) {
  validate_node_shape(n);
  const std::string& c = n.ctor;
  if (c == "C") return cyclic_group(n.args[0], lim);
  if (c == "D") return dihedral_group(n.args[0], lim);
  if (c == "Q") return quaternion_group(n.args[0], lim);
  if (c == "SD") return semidihedral_group(n.args[0], lim);
  if (c == "Heis") return heisenberg_group(n.args[0], lim);
  if (c == "Mod") return modular_group(n.args[0], n.args[1], lim);
  return abelian_p_group(n.args[0], {n.args.begin() + 1, n.args.end()}, lim);
}

}  // namespace

GroupSpec parse_spec(const std::string& text) {
  Parser p(text);
  GroupSpec spec;
  p.parse_product(spec);
  p.skip_ws();
  if (p.pos != text.size()) p.error("unexpected trailing input", p.pos);
  if (spec.factors.empty()) p.error("empty specification", 0);
  return spec;
}

std::string print_spec(const GroupSpec& spec) {
  std::string out;
  for (size_t i = 0; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    if (i) out += " x ";
    out += f.ctor + "(";
    if (f.ctor == "Ab") {
      out += std::to_string(f.args[0]) + "; ";
      for (size_t j = 1; j < f.args.size(); ++j) {
        if (j > 1) out += ",";
        out += std::to_string(f.args[j]);
      }
    } else {
      for (size_t j = 0; j < f.args.size(); ++j) {
        if (j) out += ",";
        out += std::to_string(f.args[j]);
      }
    }
    out += ")";
  }
  return out;
}

GroupPtr construct(const GroupSpec& spec, const Limits& lim) {
  if (spec.factors.empty()) fail(Err::BadParameter, "empty specification");
  if (spec.factors.size() == 1) return construct_node(spec.factors[0], lim);
  return construct_structure(spec, lim).product;
}

GroupPtr construct(const std::string& text, const Limits& lim) {
  return construct(parse_spec(text), lim);
}

ProductStructure construct_structure(const GroupSpec& spec, const Limits& lim) {
  if (spec.factors.size() < 2)
    fail(Err::BadParameter, "product structure requires at least two factors");
  std::vector<GroupPtr> factors;
  factors.reserve(spec.factors.size());
  for (const auto& f : spec.factors) factors.push_back(construct_node(f, lim));
  return direct_product(factors, lim);
}

std::vector<CatalogEntry> builtin_catalog(int max_order, const Limits& lim) {
  static const char* kSpecs[] = {
      // cyclic and abelian
      "C(2)", "C(3)", "C(4)", "Ab(2; 1,1)", "C(8)", "Ab(2; 2,1)", "Ab(2; 1,1,1)", "C(9)",
      "Ab(3; 1,1)", "C(16)", "Ab(2; 2,2)", "Ab(2; 2,1,1)", "Ab(2; 1,1,1,1)", "Ab(2; 3,1)",
      "C(27)", "Ab(3; 2,1)", "Ab(3; 1,1,1)", "C(32)",
      // non-abelian 2-groups
      "D(4)", "Q(8)", "D(8)", "Q(16)", "SD(16)", "Mod(2,4)", "D(4) x C(2)", "Q(8) x C(2)",
      "D(16)", "Q(32)", "SD(32)", "Mod(2,5)", "Q(8) x C(4)", "D(4) x Ab(2; 1,1)",
      // non-abelian 3-groups
      "Heis(3)", "Mod(3,3)", "Heis(3) x C(3)", "Mod(3,4)",
      // nilpotent but not a p-group, and one non-nilpotent group
      "D(4) x C(3)", "D(3)", "Heis(3) x Heis(3)",
  };
  std::vector<CatalogEntry> out;
  for (const char* s : kSpecs) {
    GroupSpec spec = parse_spec(s);
    long long order = 1;
    bool shape_ok = true;
    for (const auto& f : spec.factors) {
      try {
        validate_node_shape(f);
      } catch (const Error&) {
        shape_ok = false;
        break;
      }
      long long factor_order = 1;
      const auto& a = f.args;
      if (f.ctor == "C") factor_order = a[0];
      else if (f.ctor == "D") factor_order = 2 * a[0];
      else if (f.ctor == "Q" || f.ctor == "SD") factor_order = a[0];
      else if (f.ctor == "Heis") factor_order = a[0] * a[0] * a[0];
      else if (f.ctor == "Mod") {
        for (long long i = 0; i < a[1]; ++i) factor_order *= a[0];
      } else {  // Ab
        for (size_t j = 1; j < a.size(); ++j)
          for (long long i = 0; i < a[j]; ++i) factor_order *= a[0];
      }
      order *= factor_order;
      if (order > lim.max_order || order > max_order) break;
    }
    if (!shape_ok || order > lim.max_order || order > max_order) continue;
    CatalogEntry e;
    e.name = print_spec(spec);
    e.spec = std::move(spec);
    e.group = construct(e.spec, lim);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    if (a.group->order() != b.group->order()) return a.group->order() < b.group->order();
    return a.name < b.name;
  });
  return out;
}

}  // namespace groupscope

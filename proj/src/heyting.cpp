#include "heytica/heyting.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace heytica {

struct HAlg::Cache {
  std::once_flag once;
  std::vector<Bits> elements;
  std::unordered_map<Bits, int> index;
  std::once_flag count_once;
  std::size_t count = 0;
};

HAlg::HAlg(Poset dual) : dual_(std::move(dual)), cache_(std::make_shared<Cache>()) {
  if (dual_.empty()) throw DegenerateError("the up-set algebra of the empty poset has 0 = 1");
}

const std::vector<Bits>& HAlg::elements(std::size_t max_count) const {
  std::call_once(cache_->once, [&] {
    cache_->elements = enumerate_upsets(dual_, UpSetOptions{max_count});
    cache_->index.reserve(cache_->elements.size());
    for (int i = 0; i < static_cast<int>(cache_->elements.size()); ++i)
      cache_->index.emplace(cache_->elements[i], i);
  });
  return cache_->elements;
}

std::size_t HAlg::size() const {
  std::call_once(cache_->count_once, [&] { cache_->count = count_upsets(dual_); });
  return cache_->count;
}

int HAlg::index_of(Bits a) const {
  elements();
  auto it = cache_->index.find(a);
  return it == cache_->index.end() ? -1 : it->second;
}

Hom identity_hom(const HAlg& h) { return {h, h, identity_pmorphism(h.dual())}; }

Hom compose(const Hom& f, const Hom& g) {
  // (g . f)(a) = g(f(a)) = dual_g^-1(dual_f^-1(a)) = (dual_f . dual_g)^-1(a).
  return {f.source, g.target, heytica::compose(g.dual, f.dual)};
}

bool preserves_operations(const Hom& f) {
  const HAlg& a = f.source;
  const HAlg& b = f.target;
  if (f(a.bottom()) != b.bottom() || f(a.top()) != b.top()) return false;
  const auto& el = a.elements();
  for (Bits x : el) {
    if (!b.contains(f(x))) return false;
    for (Bits y : el) {
      if (f(a.meet(x, y)) != b.meet(f(x), f(y))) return false;
      if (f(a.join(x, y)) != b.join(f(x), f(y))) return false;
      if (f(a.implies(x, y)) != b.implies(f(x), f(y))) return false;
    }
  }
  return true;
}

HAlg algebra_of(const Poset& p) { return HAlg(p); }

Bits implies(const HAlg& h, Bits u, Bits v) { return h.implies(u, v); }

namespace {

// Join-irreducible members of a finite lattice of sets closed under union.
std::vector<Bits> join_irreducibles(const std::vector<Bits>& elements) {
  std::vector<Bits> out;
  for (Bits a : elements) {
    if (a == 0) continue;
    Bits below = 0;
    for (Bits b : elements)
      if (b != a && (b & ~a) == 0) below |= b;
    if (below != a) out.push_back(a);
  }
  return out;
}

}  // namespace

std::vector<Bits> join_primes(const HAlg& h) {
  const auto& el = h.elements();
  std::vector<Bits> out;
  for (Bits a : el) {
    if (a == 0) continue;
    bool prime = true;
    for (std::size_t i = 0; i < el.size() && prime; ++i)
      for (std::size_t j = i; j < el.size() && prime; ++j) {
        Bits b = el[i], c = el[j];
        if (h.leq(a, b | c) && !h.leq(a, b) && !h.leq(a, c)) prime = false;
      }
    if (prime) out.push_back(a);
  }
  return out;
}

Represented represent_subalgebra(const HAlg& host, const std::vector<Bits>& elements) {
  std::vector<Bits> primes = join_irreducibles(elements);
  const int m = static_cast<int>(primes.size());
  std::vector<Bits> up(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if ((primes[j] & ~primes[i]) == 0) up[i] |= bit(j);  // reversed inclusion
  Poset dual = Poset::from_up_sets(std::move(up));
  // Each host point goes to the least subalgebra element containing it.
  std::vector<int> map(host.points(), -1);
  for (int p = 0; p < host.points(); ++p) {
    Bits least = host.top();
    for (Bits s : elements)
      if (has(s, p)) least &= s;
    auto it = std::find(primes.begin(), primes.end(), least);
    if (it == primes.end()) throw ConstructionError("element set is not a Heyting subalgebra");
    map[p] = static_cast<int>(it - primes.begin());
  }
  HAlg alg(dual);
  PMorphism d{host.dual(), dual, std::move(map)};
  if (!is_pmorphism(d.map, d.source, d.target))
    throw ConstructionError("element set is not closed under implication");
  return {alg, Hom{alg, host, std::move(d)}, std::move(primes)};
}

DualPoset dual_poset(const HAlg& h) {
  Represented r = represent_subalgebra(h, h.elements());
  return {r.algebra.dual(), r.primes, r.inclusion};
}

Hom dual_of_pmorphism(const PMorphism& f) {
  if (!is_pmorphism(f.map, f.source, f.target)) throw NotPMorphism("map is not a p-morphism");
  return {algebra_of(f.target), algebra_of(f.source), f};
}

std::vector<Bits> generated_elements(const HAlg& h, const std::vector<Bits>& s, std::size_t max_count) {
  std::vector<Bits> items{h.bottom(), h.top()};
  std::unordered_set<Bits> seen(items.begin(), items.end());
  for (Bits x : s) {
    if (!h.contains(x)) throw BadElement("generator is not an element of the algebra");
    if (seen.insert(x).second) items.push_back(x);
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Bits a = items[i], b = items[j];
      for (Bits c : {a & b, a | b, h.implies(a, b), h.implies(b, a)})
        if (seen.insert(c).second) items.push_back(c);
      if (items.size() > max_count) throw SizeError("generated subalgebra exceeds the element cap");
    }
  }
  std::sort(items.begin(), items.end(), [](Bits a, Bits b) {
    int ca = popcount(a), cb = popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  return items;
}

Represented generated_subalgebra(const HAlg& h, const std::vector<Bits>& s) {
  return represent_subalgebra(h, generated_elements(h, s));
}

// --- tables ----------------------------------------------------------------

namespace {

std::string assign(std::initializer_list<std::pair<const char*, int>> vars) {
  std::ostringstream os;
  bool first = true;
  for (auto& [n, v] : vars) {
    os << (first ? "" : ", ") << n << '=' << v;
    first = false;
  }
  return os.str();
}

}  // namespace

ValidatedTables validate_heyting_tables(const RawTables& t) {
  const int n = t.size;
  auto square = [n](const std::vector<std::vector<int>>& tab) {
    if (static_cast<int>(tab.size()) != n) return false;
    for (auto& row : tab) {
      if (static_cast<int>(row.size()) != n) return false;
      for (int v : row)
        if (v < 0 || v >= n) return false;
    }
    return true;
  };
  if (n <= 0 || !square(t.meet) || !square(t.join) || !square(t.imp) || t.zero < 0 ||
      t.zero >= n || t.one < 0 || t.one >= n)
    throw AxiomError("arity: tables must be total n x n with entries and constants in 0..n-1");
  if (n == 1 || t.zero == t.one) throw DegenerateError("tables describe a degenerate algebra (0 = 1)");

  const auto& M = t.meet;
  const auto& J = t.join;
  const auto& I = t.imp;
  auto leq = [&](int a, int b) { return M[a][b] == a; };
  auto fail = [](const std::string& law, const std::string& where) {
    throw AxiomError(law + " fails at " + where);
  };

  // Law by law, so the reported failure is the first law in this list.
  for (int a = 0; a < n; ++a) {
    if (M[a][a] != a) fail("idempotence of meet", assign({{"a", a}}));
    if (J[a][a] != a) fail("idempotence of join", assign({{"a", a}}));
  }
  for (int a = 0; a < n; ++a) {
    if (M[a][t.zero] != t.zero) fail("bottom bound", assign({{"a", a}}));
    if (J[a][t.one] != t.one) fail("top bound", assign({{"a", a}}));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (M[a][b] != M[b][a]) fail("commutativity of meet", assign({{"a", a}, {"b", b}}));
      if (J[a][b] != J[b][a]) fail("commutativity of join", assign({{"a", a}, {"b", b}}));
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (M[a][J[a][b]] != a) fail("absorption (meet over join)", assign({{"a", a}, {"b", b}}));
      if (J[a][M[a][b]] != a) fail("absorption (join over meet)", assign({{"a", a}, {"b", b}}));
    }
  auto triples = [n](auto&& body) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) body(a, b, c);
  };
  triples([&](int a, int b, int c) {
    if (M[a][M[b][c]] != M[M[a][b]][c])
      fail("associativity of meet", assign({{"a", a}, {"b", b}, {"c", c}}));
    if (J[a][J[b][c]] != J[J[a][b]][c])
      fail("associativity of join", assign({{"a", a}, {"b", b}, {"c", c}}));
  });
  triples([&](int a, int b, int c) {
    if (M[a][J[b][c]] != J[M[a][b]][M[a][c]])
      fail("distributivity", assign({{"a", a}, {"b", b}, {"c", c}}));
  });
  triples([&](int a, int b, int c) {
    if (leq(c, I[a][b]) != leq(M[c][a], b))
      fail("residuation", assign({{"c", c}, {"a", a}, {"b", b}}));
  });

  // Join-irreducibles become dual points, ordered by reversed lattice order.
  std::vector<int> primes;
  for (int a = 0; a < n; ++a) {
    if (a == t.zero) continue;
    int below = t.zero;
    for (int b = 0; b < n; ++b)
      if (b != a && leq(b, a)) below = J[below][b];
    if (below != a) primes.push_back(a);
  }
  const int m = static_cast<int>(primes.size());
  if (m > kMaxPoints) throw SizeError("too many join-primes");
  std::vector<Bits> up(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (leq(primes[j], primes[i])) up[i] |= bit(j);
  HAlg alg(Poset::from_up_sets(std::move(up)));
  std::vector<Bits> element(n, 0);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < m; ++i)
      if (leq(primes[i], a)) element[a] |= bit(i);
  // Representation must be a bijective homomorphism.
  std::unordered_set<Bits> distinct(element.begin(), element.end());
  if (static_cast<int>(distinct.size()) != n || alg.size() != static_cast<std::size_t>(n))
    throw AxiomError("representation: table elements do not match the up-sets of the join-prime poset");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (element[M[a][b]] != (element[a] & element[b]) || element[J[a][b]] != (element[a] | element[b]) ||
          element[I[a][b]] != alg.implies(element[a], element[b]))
        throw AxiomError("representation fails at " + assign({{"a", a}, {"b", b}}));
  return {alg, std::move(element)};
}

RawTables tables_of(const HAlg& h) {
  const auto& el = h.elements();
  const int n = static_cast<int>(el.size());
  RawTables t;
  t.size = n;
  t.meet.assign(n, std::vector<int>(n));
  t.join = t.meet;
  t.imp = t.meet;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      t.meet[a][b] = h.index_of(el[a] & el[b]);
      t.join[a][b] = h.index_of(el[a] | el[b]);
      t.imp[a][b] = h.index_of(h.implies(el[a], el[b]));
    }
  t.zero = h.index_of(h.bottom());
  t.one = h.index_of(h.top());
  return t;
}

std::vector<Hom> automorphisms(const HAlg& h) {
  std::vector<Hom> out;
  for (auto& g : automorphisms(h.dual())) out.push_back({h, h, PMorphism{h.dual(), h.dual(), g}});
  return out;
}

StarAlgebra add_bottom(const HAlg& h) {
  const Poset& p = h.dual();
  const int n = p.size();
  if (n + 1 > kMaxPoints) throw SizeError("add_bottom would exceed the point bound");
  std::vector<Bits> up(n + 1);
  for (int i = 0; i < n; ++i) up[i] = p.up(i) | bit(n);
  up[n] = bit(n);
  return {HAlg(Poset::from_up_sets(std::move(up))), n};
}

// --- terms -----------------------------------------------------------------

TermPtr Term::zero() {
  static const TermPtr t = std::make_shared<Term>(Term{Op::Zero, nullptr, nullptr});
  return t;
}
TermPtr Term::one() {
  static const TermPtr t = std::make_shared<Term>(Term{Op::One, nullptr, nullptr});
  return t;
}
TermPtr Term::x() {
  static const TermPtr t = std::make_shared<Term>(Term{Op::X, nullptr, nullptr});
  return t;
}
TermPtr Term::y() {
  static const TermPtr t = std::make_shared<Term>(Term{Op::Y, nullptr, nullptr});
  return t;
}
TermPtr Term::make(Op op, TermPtr a, TermPtr b) {
  return std::make_shared<Term>(Term{op, std::move(a), std::move(b)});
}

namespace {

struct TermParser {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  std::string token() {
    skip();
    if (pos >= s.size()) throw ParseError("unexpected end of term");
    if (s[pos] == '(' || s[pos] == ')') return std::string(1, s[pos++]);
    std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' &&
           s[pos] != ')')
      ++pos;
    return s.substr(start, pos - start);
  }
  TermPtr parse() {
    std::string tok = token();
    if (tok == "0") return Term::zero();
    if (tok == "1") return Term::one();
    if (tok == "x") return Term::x();
    if (tok == "y") return Term::y();
    if (tok != "(") throw ParseError("unexpected token '" + tok + "' at " + std::to_string(pos));
    std::string op = token();
    Term::Op kind;
    if (op == "and") kind = Term::Op::And;
    else if (op == "or") kind = Term::Op::Or;
    else if (op == "->") kind = Term::Op::Imp;
    else throw ParseError("unknown connective '" + op + "'");
    TermPtr a = parse();
    TermPtr b = parse();
    if (token() != ")") throw ParseError("expected ')' at " + std::to_string(pos));
    return Term::make(kind, a, b);
  }
};

}  // namespace

TermPtr parse_term(const std::string& text) {
  TermParser p{text};
  TermPtr t = p.parse();
  p.skip();
  if (p.pos != text.size()) throw ParseError("trailing input after term");
  return t;
}

std::string to_string(const TermPtr& t) {
  switch (t->op) {
    case Term::Op::Zero: return "0";
    case Term::Op::One: return "1";
    case Term::Op::X: return "x";
    case Term::Op::Y: return "y";
    case Term::Op::And: return "(and " + to_string(t->lhs) + " " + to_string(t->rhs) + ")";
    case Term::Op::Or: return "(or " + to_string(t->lhs) + " " + to_string(t->rhs) + ")";
    case Term::Op::Imp: return "(-> " + to_string(t->lhs) + " " + to_string(t->rhs) + ")";
  }
  return {};
}

int depth(const TermPtr& t) {
  if (!t->lhs) return 0;
  return 1 + std::max(depth(t->lhs), depth(t->rhs));
}

bool uses_y(const TermPtr& t) {
  if (t->op == Term::Op::Y) return true;
  return t->lhs && (uses_y(t->lhs) || uses_y(t->rhs));
}

Bits eval_term(const TermPtr& t, const HAlg& h, const Assignment& env) {
  switch (t->op) {
    case Term::Op::Zero: return h.bottom();
    case Term::Op::One: return h.top();
    case Term::Op::X:
      if (!env.x) throw UnboundVariable("variable x is unbound");
      return *env.x;
    case Term::Op::Y:
      if (!env.y) throw UnboundVariable("variable y is unbound");
      return *env.y;
    case Term::Op::And: return h.meet(eval_term(t->lhs, h, env), eval_term(t->rhs, h, env));
    case Term::Op::Or: return h.join(eval_term(t->lhs, h, env), eval_term(t->rhs, h, env));
    case Term::Op::Imp: return h.implies(eval_term(t->lhs, h, env), eval_term(t->rhs, h, env));
  }
  return 0;
}

TermPtr star_term(const TermPtr& t) {
  if (t->op == Term::Op::Zero) return Term::y();
  if (!t->lhs) return t;
  return Term::make(t->op, star_term(t->lhs), star_term(t->rhs));
}

}  // namespace heytica

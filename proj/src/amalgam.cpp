#include "heytica/amalgam.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <set>

#include "heytica/catalog.hpp"

namespace heytica {

namespace {
std::atomic<bool> g_fault{false};
}

void set_independence_fault(bool on) { g_fault = on; }
bool independence_fault() { return g_fault; }

void validate_diagram(const Diagram& d) {
  auto leg = [&](const Hom& e, const HAlg& tgt, const char* name) {
    if (e.dual.source.size() != tgt.points() || e.dual.target.size() != d.a.points())
      throw ConstructionError(std::string("diagram leg ") + name + " has mismatched duals");
    if (!is_pmorphism(e.dual.map, e.dual.source, e.dual.target))
      throw NotPMorphism(std::string("diagram leg ") + name + " is not dual to a p-morphism");
    if (!e.injective()) throw ConstructionError(std::string("diagram leg ") + name + " is not an embedding");
  };
  leg(d.e_b, d.b, "e_b");
  leg(d.e_c, d.c, "e_c");
}

std::vector<Bits> image_elements(const Hom& f) {
  std::vector<Bits> out;
  for (Bits a : f.source.elements()) out.push_back(f(a));
  return out;
}

namespace {

/// Whether some b in t is comparable with a and lacks an interpolant in u.
bool row_fails(Bits a, const std::vector<Bits>& u, const std::vector<Bits>& t, bool fault, Bits* witness) {
  std::vector<Bits> above, below;
  for (Bits c : u) {
    if ((a & ~c) == 0) above.push_back(c);
    if ((c & ~a) == 0) below.push_back(c);
  }
  for (Bits b : t) {
    if ((a & ~b) == 0) {
      bool ok = fault ? std::all_of(u.begin(), u.end(), [&](Bits c) { return (a & ~c) == 0 && (c & ~b) == 0; })
                      : std::any_of(above.begin(), above.end(), [&](Bits c) { return (c & ~b) == 0; });
      if (!ok) {
        *witness = b;
        return true;
      }
    }
    if ((b & ~a) == 0) {
      bool ok = fault ? std::all_of(u.begin(), u.end(), [&](Bits c) { return (b & ~c) == 0 && (c & ~a) == 0; })
                      : std::any_of(below.begin(), below.end(), [&](Bits c) { return (b & ~c) == 0; });
      if (!ok) {
        *witness = b;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::optional<std::pair<Bits, Bits>> independence_counterexample(const std::vector<Bits>& s,
                                                                 const std::vector<Bits>& u,
                                                                 const std::vector<Bits>& t, Exec exec) {
  const bool fault = g_fault;
  const long n = static_cast<long>(s.size());
  long first = LONG_MAX;
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8) reduction(min : first)
    for (long i = 0; i < n; ++i) {
      Bits w;
      if (i < first && row_fails(s[i], u, t, fault, &w)) first = std::min(first, i);
    }
  } else {
    for (long i = 0; i < n && first == LONG_MAX; ++i) {
      Bits w;
      if (row_fails(s[i], u, t, fault, &w)) first = i;
    }
  }
  if (first == LONG_MAX) return std::nullopt;
  Bits w = 0;
  row_fails(s[first], u, t, fault, &w);
  return std::make_pair(s[first], w);
}

bool check_independence(const HAlg&, const std::vector<Bits>& s, const std::vector<Bits>& u,
                        const std::vector<Bits>& t, Exec exec) {
  return !independence_counterexample(s, u, t, exec).has_value();
}

bool indep_rel(const HAlg& h, const std::vector<Bits>& a, const std::vector<Bits>& b,
               const std::vector<Bits>& c) {
  std::vector<Bits> ab = a, bc = c;
  ab.insert(ab.end(), b.begin(), b.end());
  bc.insert(bc.end(), b.begin(), b.end());
  return check_independence(h, generated_elements(h, ab), generated_elements(h, b), generated_elements(h, bc));
}

AmalgamChecks check_amalgam(const Diagram& d, const Amalgam& m) {
  AmalgamChecks r;
  const auto ia = image_elements(m.base_map(d));
  const auto ib = image_elements(m.into_left);
  const auto ic = image_elements(m.into_right);
  r.commutes = true;
  for (Bits x : d.a.elements())
    if (m.into_left(d.e_b(x)) != m.into_right(d.e_c(x))) r.commutes = false;
  r.independent = check_independence(m.result, ib, ia, ic);
  std::set<Bits> base(ia.begin(), ia.end());
  std::set<Bits> left;
  for (Bits x : ib)
    if (!base.count(x)) left.insert(x);
  r.disjoint = true;
  for (Bits x : ic)
    if (!base.count(x) && left.count(x)) r.disjoint = false;
  return r;
}

namespace {

Amalgam amalgam_from(const Diagram& d, const Poset& q, const std::vector<int>& l,
                     const std::vector<int>& r, std::vector<std::pair<int, int>> pairs) {
  HAlg res(q);
  return Amalgam{res, Hom{d.b, res, PMorphism{q, d.b.dual(), l}}, Hom{d.c, res, PMorphism{q, d.c.dual(), r}},
                 std::move(pairs), false};
}

/// Sub-posets of the fibered product whose projections stay surjective
/// p-morphisms, largest first.
std::optional<Amalgam> fallback_search(const Diagram& d, const FiberedProduct& fp) {
  const int k = fp.poset.size();
  if (k > 20) return std::nullopt;
  std::vector<Bits> subsets;
  for (Bits s = 1; s < (Bits{1} << k); ++s) subsets.push_back(s);
  std::stable_sort(subsets.begin(), subsets.end(), [](Bits x, Bits y) { return popcount(x) > popcount(y); });
  for (Bits s : subsets) {
    std::vector<int> pts = members(s);
    Poset q = fp.poset.induced(pts);
    std::vector<int> l, r;
    std::vector<std::pair<int, int>> pairs;
    for (int p : pts) {
      l.push_back(fp.left(p));
      r.push_back(fp.right(p));
      pairs.push_back(fp.pairs[p]);
    }
    if (!is_pmorphism(l, q, d.b.dual()) || !is_pmorphism(r, q, d.c.dual())) continue;
    Amalgam m = amalgam_from(d, q, l, r, pairs);
    if (!m.into_left.injective() || !m.into_right.injective()) continue;
    if (check_amalgam(d, m).ok()) {
      m.fallback_used = true;
      return m;
    }
  }
  return std::nullopt;
}

}  // namespace

Amalgam superamalgamate(const Diagram& d, bool verify) {
  validate_diagram(d);
  FiberedProduct fp = fibered_product(d.e_b.dual, d.e_c.dual);
  Amalgam m = amalgam_from(d, fp.poset, fp.left.map, fp.right.map, fp.pairs);
  if (!verify) {
    const auto& l = m.into_left.dual;
    const auto& r = m.into_right.dual;
    if (!is_pmorphism(l.map, l.source, l.target) || !is_pmorphism(r.map, r.source, r.target) || !l.surjective() ||
        !r.surjective())
      throw ConstructionError("fibered product projections are not surjective p-morphisms");
    for (int p = 0; p < fp.poset.size(); ++p)
      if (d.e_b.dual(l(p)) != d.e_c.dual(r(p))) throw ConstructionError("fibered product square does not commute");
    return m;
  }
  AmalgamChecks ch = check_amalgam(d, m);
  if (ch.ok()) return m;
  if (auto alt = fallback_search(d, fp)) return *alt;
  auto cx = independence_counterexample(image_elements(m.into_left), image_elements(m.base_map(d)),
                                        image_elements(m.into_right));
  std::string detail = cx ? " at pair (" + std::to_string(cx->first) + ", " + std::to_string(cx->second) + ")" : "";
  throw IndependenceFailure("no independent amalgam found" + detail);
}

StationarityReport stationarity_check(const Diagram& d, std::size_t element_bound, bool exhaustive) {
  validate_diagram(d);
  StationarityReport rep;
  if (element_bound == 0) element_bound = 2 * superamalgamate(d).result.size();
  rep.element_bound = element_bound;
  const Poset& p1 = d.b.dual();
  const Poset& p2 = d.c.dual();
  const auto& f1 = d.e_b.dual.map;
  const auto& f2 = d.e_c.dual.map;
  const auto up1 = enumerate_upsets(p1);
  const auto up2 = enumerate_upsets(p2);
  const auto up0 = enumerate_upsets(d.a.dual());
  std::set<CanonCode> classes;
  bool done = false;
  for (const Poset& q : posets_by_algebra_size(element_bound, kMaxPoints)) {
    if (done) break;
    if (q.size() < std::max(p1.size(), p2.size())) continue;
    ++rep.posets_searched;
    const HAlg g(q);
    const std::size_t gsize = g.size();
    for (const auto& q1 : surjective_pmorphisms(q, p1)) {
      if (done) break;
      for_each_pmorphism(q, p2, true, [&](const std::vector<int>& q2) {
        for (int i = 0; i < q.size(); ++i)
          if (f1[q1[i]] != f2[q2[i]]) return true;
        PMorphism m1{q, p1, q1}, m2{q, p2, q2};
        std::vector<Bits> s, u, t, gens;
        for (Bits x : up1) s.push_back(m1.preimage(x));
        for (Bits x : up2) t.push_back(m2.preimage(x));
        for (Bits x : up0) u.push_back(m1.preimage(d.e_b.dual.preimage(x)));
        gens = s;
        gens.insert(gens.end(), t.begin(), t.end());
        if (generated_elements(g, gens).size() != gsize) return true;
        if (!check_independence(g, s, u, t, Exec::Serial)) return true;
        ++rep.amalgams;
        std::vector<std::uint64_t> colors(q.size());
        for (int i = 0; i < q.size(); ++i) colors[i] = static_cast<std::uint64_t>(q1[i]) * 64 + q2[i];
        classes.insert(canonical_form(q, colors));
        done = !exhaustive && classes.size() >= 2;
        return !done;
      });
    }
  }
  if (classes.empty()) throw SizeError("no independent amalgam within the element bound");
  rep.classes = classes.size();
  rep.exhaustive = exhaustive || classes.size() < 2;
  rep.class_codes.assign(classes.begin(), classes.end());
  rep.stationary = rep.classes == 1;
  return rep;
}

StationarityProbe stationarity_probe(const Diagram& d, std::size_t exact_bound) {
  StationarityProbe pr;
  FiberedProduct fp = fibered_product(d.e_b.dual, d.e_c.dual);
  const Amalgam m = amalgam_from(d, fp.poset, fp.left.map, fp.right.map, fp.pairs);
  if (2 * m.result.size() <= exact_bound) {
    StationarityReport r = stationarity_check(d);
    pr.exact = pr.decided = true;
    pr.stationary = r.stationary;
    pr.classes = r.classes;
    return pr;
  }
  const int k = fp.poset.size();
  if (k > 20) return pr;
  const Poset& p1 = d.b.dual();
  const Poset& p2 = d.c.dual();
  const auto up1 = enumerate_upsets(p1);
  const auto up2 = enumerate_upsets(p2);
  const auto up0 = enumerate_upsets(d.a.dual());
  const int least = std::max(p1.size(), p2.size());
  std::set<CanonCode> classes;
  for (Bits s = (Bits{1} << k) - 1; s != 0 && classes.size() < 2; --s) {
    if (popcount(s) < least) continue;
    const std::vector<int> pts = members(s);
    Poset q = fp.poset.induced(pts);
    std::vector<int> l, r;
    for (int p : pts) {
      l.push_back(fp.left(p));
      r.push_back(fp.right(p));
    }
    if (!is_pmorphism(l, q, p1) || !is_pmorphism(r, q, p2)) continue;
    PMorphism m1{q, p1, l}, m2{q, p2, r};
    if (!m1.surjective() || !m2.surjective()) continue;
    const HAlg g(q);
    std::vector<Bits> sb, u, t, gens;
    for (Bits x : up1) sb.push_back(m1.preimage(x));
    for (Bits x : up2) t.push_back(m2.preimage(x));
    for (Bits x : up0) u.push_back(m1.preimage(d.e_b.dual.preimage(x)));
    gens = sb;
    gens.insert(gens.end(), t.begin(), t.end());
    if (generated_elements(g, gens).size() != g.size()) continue;
    if (!check_independence(g, sb, u, t, Exec::Serial)) continue;
    std::vector<std::uint64_t> colors(q.size());
    for (int i = 0; i < q.size(); ++i) colors[i] = static_cast<std::uint64_t>(l[i]) * 64 + r[i];
    classes.insert(canonical_form(q, colors));
  }
  pr.classes = classes.size();
  pr.decided = classes.size() >= 2;
  return pr;
}

std::vector<Diagram> all_diagrams(int max_dual) {
  std::vector<HAlg> algs;
  for (int n = 1; n <= max_dual; ++n)
    for (const auto& p : enumerate_posets(n)) algs.emplace_back(p);
  std::vector<Diagram> out;
  for (const auto& a : algs)
    for (const auto& b : algs) {
      if (b.points() < a.points()) continue;
      auto eb = embeddings_between(a, b);
      if (eb.empty()) continue;
      for (const auto& c : algs) {
        if (c.points() < a.points()) continue;
        auto ec = embeddings_between(a, c);
        for (const auto& x : eb)
          for (const auto& y : ec) out.push_back(Diagram{a, b, c, x, y});
      }
    }
  return out;
}

}  // namespace heytica

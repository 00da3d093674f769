#include "heytica/suites.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "heytica/amalgam.hpp"
#include "heytica/axioms.hpp"
#include "heytica/brute.hpp"
#include "heytica/catalog.hpp"
#include "heytica/envelope.hpp"
#include "heytica/limit.hpp"
#include "heytica/orderings.hpp"
#include "heytica/witnesses.hpp"

namespace heytica {

bool SuiteResult::ok() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.ok; });
}

namespace {

int cap(const SuiteOptions& o, int dflt) { return o.bound > 0 ? std::min(o.bound, dflt) : dflt; }

std::string num(std::size_t a, std::size_t b, const char* what) {
  return std::to_string(a) + " of " + std::to_string(b) + " " + what;
}

std::vector<Poset> upto(int n) {
  std::vector<Poset> out;
  for (int k = 1; k <= n; ++k)
    for (auto& p : enumerate_posets(k)) out.push_back(p);
  return out;
}

SuiteResult duality(const SuiteOptions& o) {
  const int b = cap(o, 5);
  std::size_t total = 0, round1 = 0, round2 = 0;
  for (int n = 1; n <= b; ++n)
    for (const auto& p : oracle::brute_representatives(n)) {
      ++total;
      DualPoset d = dual_poset(algebra_of(p));
      round1 += oracle::brute_isomorphic(d.poset, p);
      round2 += d.iso.injective() && d.iso.surjective() && preserves_operations(d.iso);
    }
  return {1, "duality", "all posets up to " + std::to_string(b) + " points",
          {{"dual_of_algebra", round1 == total, num(round1, total, "posets come back isomorphic")},
           {"algebra_of_dual", round2 == total, num(round2, total, "algebras come back isomorphic")}}};
}

SuiteResult map_duality(const SuiteOptions& o) {
  const int b = cap(o, 3);
  std::size_t total = 0, good = 0, homs = 0;
  for (int n = 1; n <= b; ++n)
    for (int m = 1; m <= b; ++m)
      for (const auto& p : oracle::brute_representatives(n))
        for (const auto& q : oracle::brute_representatives(m))
          for (const auto& f : oracle::brute_pmorphisms(p, q)) {
            ++total;
            PMorphism pm{p, q, f};
            Hom h = dual_of_pmorphism(pm);
            homs += preserves_operations(h);
            std::set<Bits> img;
            for (Bits u : h.source.elements()) img.insert(h(u));
            const bool inj = img.size() == h.source.size();
            const bool surj = img.size() == h.target.size();
            good += inj == pm.surjective() && surj == pm.injective();
          }
  return {2, "map_duality", "all p-morphisms between posets up to " + std::to_string(b) + " points",
          {{"homomorphism", homs == total, num(homs, total, "duals preserve the operations")},
           {"injective_iff_surjective", good == total, num(good, total, "maps exchange injective and surjective")}}};
}

SuiteResult independence(const SuiteOptions& o) {
  const int b = cap(o, 3);
  const auto ds = all_diagrams(b);
  std::size_t commutes = 0, indep = 0, disjoint = 0;
  std::string first;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    try {
      Amalgam m = superamalgamate(ds[i]);
      AmalgamChecks ch = check_amalgam(ds[i], m);
      commutes += ch.commutes;
      indep += ch.independent;
      disjoint += ch.disjoint;
    } catch (const IndependenceFailure& e) {
      if (first.empty()) first = "; diagram " + std::to_string(i) + ": " + e.what();
    }
  }
  const std::size_t n = ds.size();
  return {3, "independence", "all diagrams with duals up to " + std::to_string(b) + " points",
          {{"commutes", commutes == n, num(commutes, n, "amalgams commute")},
           {"independent", indep == n, num(indep, n, "amalgams are independent") + first},
           {"disjoint", disjoint == n, num(disjoint, n, "amalgams have disjoint differences")}}};
}

SuiteResult axioms(const SuiteOptions& o) {
  const int b = cap(o, 3);
  Chain c = new_chain();
  saturate(c, b, 2);
  const auto configs = sample_configs(c, o.samples, o.seed);
  AxiomReport r = axiom_suite(c, configs);
  SuiteResult s{4, "axioms",
                "saturate(" + std::to_string(b) + ",2), " + std::to_string(configs.size()) + " configurations, seed " +
                    std::to_string(o.seed),
                {}};
  auto tally = [&](const std::string& key) {
    const AxiomTally& t = r.axioms.at(key);
    return num(t.checked - t.failed, t.checked, "checks pass");
  };
  for (const char* name : {"existence", "invariance", "monotonicity", "symmetry", "transitivity"}) {
    std::string detail = tally(name);
    bool ok = r.ok(name);
    if (std::string(name) == "monotonicity") {
      ok = ok && r.ok("monotonicity_base");
      detail += "; over a larger base: " + tally("monotonicity_base");
    }
    s.clauses.push_back({name, ok, detail});
  }
  const AxiomTally& st = r.axioms.at("stationarity");
  std::string detail = tally("stationarity") + ", " + std::to_string(r.stationarity_undecided) + " undecided";
  if (!st.counterexamples.empty()) detail += "; first counterexample: configuration " + std::to_string(st.counterexamples[0]);
  s.clauses.push_back({"stationarity", st.failed == 0 && r.stationarity_undecided == 0, detail});
  return s;
}

SuiteResult envelope_suite(const SuiteOptions& o) {
  const int b = cap(o, 3);
  std::size_t algs = 0, laws = 0, maps = 0, lifts = 0, splits = 0, split_ok = 0;
  for (const auto& p : upto(b)) {
    HAlg h = algebra_of(p);
    BoolEnv e = envelope(h);
    ++algs;
    bool ok = true;
    std::set<Bits> fixed;
    for (Bits s : e.elements()) {
      const Bits i = e.interior(s);
      ok = ok && (i & ~s) == 0 && e.interior(i) == i;
      if (i == s) fixed.insert(s);
      for (Bits t : e.elements()) {
        if ((s & ~t) == 0) ok = ok && (i & ~e.interior(t)) == 0;
        ok = ok && e.interior(s & t) == (i & e.interior(t));
      }
    }
    ok = ok && fixed == std::set<Bits>(h.elements().begin(), h.elements().end());
    laws += ok;
    for (Bits x = 1; x <= p.all(); ++x) {
      ++splits;
      AtomlessSplit sp = atomless_split(h, x);
      split_ok += sp.part != 0 && sp.part != sp.lifted && (sp.part & ~sp.lifted) == 0;
    }
  }
  for (const auto& p : upto(b))
    for (const auto& q : upto(b))
      for (const auto& f : oracle::brute_pmorphisms(p, q)) {
        ++maps;
        BoolHom l = lift_hom(dual_of_pmorphism(PMorphism{p, q, f}));
        bool ok = true;
        for (Bits s : l.source.elements()) ok = ok && l(l.source.interior(s)) == l.target.interior(l(s));
        lifts += ok;
      }
  return {5, "envelope", "duals up to " + std::to_string(b) + " points",
          {{"interior_laws", laws == algs, num(laws, algs, "envelopes satisfy the interior laws")},
           {"lift_commutes", lifts == maps, num(lifts, maps, "lifted maps commute with interiors")},
           {"atomless_split", split_ok == splits, num(split_ok, splits, "nonzero elements split strictly")}}};
}

SuiteResult regular(const SuiteOptions& o) {
  const int b = cap(o, 4), f = cap(o, 5);
  std::size_t algs = 0, boolean = 0, with_host_atoms = 0;
  for (const auto& p : upto(b)) {
    HAlg h = algebra_of(p);
    RegularAlg r = regular_elements(h);
    ++algs;
    boolean += r.is_boolean();
    bool atoms_ok = true;
    for (Bits a : r.atoms())
      for (Bits y : h.elements())
        if (y != 0 && y != a && h.leq(y, a)) atoms_ok = false;
    with_host_atoms += atoms_ok;
  }
  std::size_t cases = 0, good = 0;
  for (const auto& p : upto(f)) {
    if (!p.is_forest()) continue;
    HAlg h = algebra_of(p);
    for (int x = 0; x < p.size(); ++x) {
      if (p.strict_down(x) == 0) continue;
      ++cases;
      RSplit s = r_split(h, p.up(x));
      const HAlg& g = s.algebra;
      good += g.neg(g.neg(s.r1)) == s.r1 && g.neg(g.neg(s.r2)) == s.r2 && (s.r1 | s.r2) == s.embedding(p.up(x));
    }
  }
  return {6, "regular", "duals up to " + std::to_string(b) + " points; forests up to " + std::to_string(f),
          {{"boolean", boolean == algs, num(boolean, algs, "regular algebras are Boolean")},
           {"atoms_are_host_atoms", with_host_atoms == algs,
            num(with_host_atoms, algs, "algebras have every regular atom an atom of the host") +
                "; 2-chain dual: the only regular atom is 1"},
           {"r_split", good == cases, num(good, cases, "principal non-root elements split into regular parts")}}};
}

SuiteResult hneg(const SuiteOptions&) {
  SixAtomReport r = six_atom_witness();
  return {7, "hneg", "fixed construction",
          {{"six_atoms", r.six_atoms, "the ambient regular algebra has " + std::to_string(r.atom_count) + " atoms"},
           {"joins_differ", r.joins_differ, ""},
           {"permutation_extends", r.permutation_extends, ""},
           {"split_join", r.split_join_ok, ""}}};
}

SuiteResult orderings(const SuiteOptions& o) {
  const int b = cap(o, 3);
  std::size_t orders = 0, total_ok = 0;
  for (const auto& p : upto(b + 1)) {
    HAlg h(p);
    for (const auto& nat : all_natural_orders(h)) {
      ++orders;
      auto full = nat.full_order();
      std::vector<Bits> sorted = full;
      std::sort(sorted.begin(), sorted.end());
      std::vector<Bits> el = h.elements();
      std::sort(el.begin(), el.end());
      bool ok = sorted == el;
      for (std::size_t i = 0; i + 1 < full.size(); ++i) ok = ok && nat.less(full[i], full[i + 1]);
      for (Bits x : h.elements())
        for (Bits y : h.elements())
          if (x != y && h.leq(x, y)) ok = ok && nat.less(x, y);
      total_ok += ok;
    }
  }
  bool counts = true;
  std::size_t fact = 1;
  for (int n = 1; n <= 4; ++n) {
    fact *= n;
    counts = counts && all_natural_orders(algebra_of(chain(n))).size() == 1 &&
             all_natural_orders(algebra_of(antichain(n))).size() == fact;
  }
  std::size_t ext = 0, ext_ok = 0;
  for (const auto& pa : upto(b))
    for (const auto& pb : upto(b)) {
      if (pb.size() < pa.size()) continue;
      HAlg a(pa), bb(pb);
      for (const auto& f : embeddings_between(a, bb))
        for (const auto& nat : all_natural_orders(a)) {
          ++ext;
          NatOrder e = extend_order(f, nat);
          ext_ok += restricts_to(f, e, nat) && is_admissible(bb, e.as_permutation());
        }
    }
  std::size_t pairs = 0, amalgamated = 0;
  for (const auto& d : all_diagrams(b))
    for (const auto& ob : all_natural_orders(d.b))
      for (const auto& oc : all_natural_orders(d.c)) {
        bool agree = true;
        for (Bits x : d.a.elements())
          for (Bits y : d.a.elements())
            if (ob.less(d.e_b(x), d.e_b(y)) != oc.less(d.e_c(x), d.e_c(y))) agree = false;
        if (!agree) continue;
        ++pairs;
        try {
          OrderedAmalgam m = ordered_amalgamate(d, ob, oc);
          amalgamated += restricts_to(m.amalgam.into_left, m.order, ob) && restricts_to(m.amalgam.into_right, m.order, oc);
        } catch (const CycleError&) {
        }
      }
  return {8, "orderings", "duals up to " + std::to_string(b) + " points",
          {{"natural_order_total", total_ok == orders, num(total_ok, orders, "natural orders are total and extend <=")},
           {"admissible_counts", counts, "chains give 1, n-atom Boolean algebras n!, n <= 4"},
           {"extend_order", ext_ok == ext, num(ext_ok, ext, "extensions are admissible and restrict")},
           {"ordered_amalgamate", amalgamated == pairs,
            num(amalgamated, pairs, "agreeing ordered diagrams have an ordered amalgam")}}};
}

SuiteResult kpt(const SuiteOptions&) {
  KptReport r = kpt_witness();
  return {9, "kpt", "2 orders on A, 6 on B",
          {{"exhaustive", r.orders_a.size() == 2 && r.orders_b.size() == 6, ""},
           {"condition_i", r.condition_i, ""},
           {"condition_ii", r.condition_ii, ""}}};
}

SuiteResult forgetful(const SuiteOptions&) {
  ForgetfulReport r = order_forgetful_counterexample();
  return {10, "forgetful", "fixed construction",
          {{"aut_h_trivial", r.aut_h == 1, std::to_string(r.aut_h) + " automorphisms"},
           {"aut_h_prime_two", r.aut_h_prime == 2, std::to_string(r.aut_h_prime) + " automorphisms"},
           {"restrictions_differ", r.restrictions_admissible && r.restrictions_differ && r.differ_at_ab, ""}}};
}

SuiteResult verdict_suite(int id, const std::string& name, const std::string& scale, const WitnessReport& w) {
  SuiteResult s{id, name, scale, {}};
  for (const auto& [k, v] : w.verdicts) s.clauses.push_back({k, v, ""});
  return s;
}

SuiteResult roelcke(const SuiteOptions&) {
  WitnessReport w = roelcke_family(4);
  SuiteResult s = verdict_suite(11, "roelcke", "4 star algebras", w);
  s.clauses.push_back({"four_members", w.stages.size() == 4, ""});
  return s;
}

SuiteResult orbit(const SuiteOptions&) {
  Chain c = new_chain();
  saturate(c, 3, 2);
  WitnessReport w = infinite_orbit_witness(c, {}, 4);
  SuiteResult s = verdict_suite(12, "orbit", "k = 4 over saturate(3,2)", w);
  Chain d = new_chain();
  saturate(d, 3, 2);
  const Bits mid = d.top().dual().up(members(d.top().dual().maximal()).front());
  WitnessReport ws = infinite_orbit_witness(d, {mid}, 4);
  s.clauses.push_back({"nonempty_s", ws.ok(), "S = one principal up-set of the top level"});
  return s;
}

SuiteResult limit(const SuiteOptions& o) {
  Chain c = new_chain();
  saturate(c, cap(o, 3), 2);
  LimitCheck dn = check_density(c, 2000, o.seed);
  LimitCheck jn = check_irreducible(c, 2000, o.seed);
  auto detail = [](const LimitCheck& l) {
    std::ostringstream os;
    os << l.inputs << " inputs on " << l.exhaustive_levels.size() << " listed levels";
    if (!l.failure.empty()) os << "; " << l.failure;
    return os.str();
  };
  return {13, "limit", "saturate(" + std::to_string(cap(o, 3)) + ",2), every level",
          {{"densify", dn.ok, detail(dn)}, {"break_join_irreducible", jn.ok, detail(jn)}}};
}

SuiteResult catalog(const SuiteOptions& o) {
  const int b = cap(o, 5);
  Catalog c = build_catalog(b);
  const std::vector<std::size_t> expect{1, 2, 5, 16, 63};
  auto counts = c.counts();
  bool table = true, brute = true;
  std::ostringstream os;
  for (int n = 1; n <= b; ++n) {
    const std::size_t got = counts.at(n - 1);
    table = table && got == expect.at(n - 1);
    brute = brute && got == oracle::brute_class_count(n);
    os << (n > 1 ? "," : "") << got;
  }
  return {14, "catalog", "n = 1.." + std::to_string(b),
          {{"counts", table, os.str()}, {"brute_force_agrees", brute, ""}}};
}

}  // namespace

const std::vector<SuiteInfo>& all_suites() {
  static const std::vector<SuiteInfo> s{
      {1, "duality", 10, duality},       {2, "map_duality", 10, map_duality}, {3, "independence", 60, independence},
      {4, "axioms", 120, axioms},        {5, "envelope", 30, envelope_suite}, {6, "regular", 60, regular},
      {7, "hneg", 5, hneg},              {8, "orderings", 60, orderings},     {9, "kpt", 1, kpt},
      {10, "forgetful", 1, forgetful},   {11, "roelcke", 10, roelcke},        {12, "orbit", 30, orbit},
      {13, "limit", 60, limit},          {14, "catalog", 30, catalog},
  };
  return s;
}

const std::vector<std::string>& known_false_clauses() {
  static const std::vector<std::string> k{"axioms:stationarity", "regular:atoms_are_host_atoms", "hneg:six_atoms",
                                          "orderings:ordered_amalgamate"};
  return k;
}

bool is_known_false(const std::string& suite, const std::string& clause) {
  const auto& k = known_false_clauses();
  return std::find(k.begin(), k.end(), suite + ":" + clause) != k.end();
}

SuiteResult run_suite(const SuiteInfo& s, const SuiteOptions& o) {
  try {
    return s.run(o);
  } catch (const std::exception& e) {
    return {s.id, s.name, "", {{"completed", false, e.what()}}};
  }
}

}  // namespace heytica

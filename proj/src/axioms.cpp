#include "heytica/axioms.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

namespace heytica {

namespace {

using Set = std::vector<Bits>;

Set cat(Set x, const Set& y) {
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

Set lift(const Hom& f, const Set& s) {
  Set out;
  for (Bits x : s) out.push_back(f(x));
  return out;
}

// Host element back in the subalgebra's own coordinates.
Bits pull(const Represented& r, Bits x) { return r.inclusion.dual.image(x); }

Hom inclusion_between(const Represented& small, const Represented& big) {
  return element_hom(small.algebra, big.algebra, [&](Bits u) { return pull(big, small.inclusion(u)); });
}

Bits random_element(const HAlg& h, std::mt19937_64& rng) {
  const Bits seed = rng() & h.top();
  // Thin the seed a little so the up-closure is not almost always the top.
  return h.dual().up_closure(seed & rng() & rng());
}

std::string diagram_key(const Diagram& d) {
  std::ostringstream os;
  auto poset = [&](const Poset& p) {
    os << p.size() << ':';
    for (int i = 0; i < p.size(); ++i) os << p.up(i) << ',';
    os << ';';
  };
  poset(d.a.dual());
  poset(d.b.dual());
  poset(d.c.dual());
  for (int v : d.e_b.dual.map) os << v << ',';
  os << ';';
  for (int v : d.e_c.dual.map) os << v << ',';
  return os.str();
}

struct Suite {
  const Chain& chain;
  const std::vector<AxiomConfig>& configs;
  AxiomReport rep;
  std::map<std::string, int> stationary_cache;  // 1 yes, 0 no, -1 undecided

  void note(const std::string& axiom, bool premise, bool holds, std::size_t i) {
    if (!premise) return;
    AxiomTally& t = rep.axioms[axiom];
    ++t.checked;
    if (!holds) {
      ++t.failed;
      if (t.counterexamples.size() < 8) t.counterexamples.push_back(i);
    }
  }

  // Verdict on an abstract copy of <ABCD> with its dual points shuffled.
  bool relabeled_verdict(const HAlg& h, const AxiomConfig& k, std::mt19937_64& rng) {
    Represented r = generated_subalgebra(h, cat(cat(k.a, k.b), cat(k.c, k.d)));
    std::vector<int> perm(r.algebra.points());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    HAlg moved(r.algebra.dual().relabeled(perm));
    auto tr = [&](const Set& s) {
      Set out;
      for (Bits x : s) {
        Bits u = pull(r, x), v = 0;
        for (int p : members(u)) v |= bit(perm[p]);
        out.push_back(v);
      }
      return out;
    };
    return indep_rel(moved, tr(k.a), tr(k.b), tr(k.c));
  }

  // A' with the type of A over B, free from C over B, grown on top of
  // `fork`. Empty when the chain's size bounds are hit.
  std::optional<bool> existence_in(Chain& fork, const Set& a, const Set& b, const Set& c) {
    const HAlg h = fork.top();
    Represented rb = generated_subalgebra(h, b);
    Represented rab = generated_subalgebra(h, cat(a, b));
    Represented rbc = generated_subalgebra(h, cat(b, c));
    Diagram d{rb.algebra, rab.algebra, rbc.algebra, inclusion_between(rb, rab), inclusion_between(rb, rbc)};
    Amalgam s;
    try {
      s = superamalgamate(d);
    } catch (const IndependenceFailure&) {
      return false;
    }
    ExtensionTask task{s.into_right, rbc.inclusion};
    std::optional<Hom> g = find_compatible(h, task);
    std::optional<Hom> step;
    if (!g) {
      try {
        g = realize(fork, task);
      } catch (const SizeError&) {
        return std::nullopt;
      }
      step = fork.steps.back();
    }
    const HAlg& t = fork.top();
    auto up = [&](const Set& x) { return step ? lift(*step, x) : x; };
    Set a2;
    for (Bits x : a) a2.push_back((*g)(s.into_left(pull(rab, x))));
    const Set a1 = up(a), b1 = up(b), c1 = up(c);
    try {
      close_partial_iso(t, PartialIso{cat(a1, b1), cat(a2, b1)});
    } catch (const ConstructionError&) {
      return false;
    }
    return indep_rel(t, a2, b1, c1);
  }

  // First on a fork of the chain cut at the configuration's level; past the
  // size bounds, over the abstract <ABC> alone, which is enough since the
  // limit realizes any finite extension of it.
  bool existence(const AxiomConfig& k) {
    Chain fork;
    fork.levels.assign(chain.levels.begin(), chain.levels.begin() + k.level + 1);
    fork.steps.assign(chain.steps.begin(), chain.steps.begin() + k.level);
    fork.max_points = chain.max_points;
    fork.max_levels = chain.max_levels;
    const std::size_t before = fork.levels.size();
    if (auto r = existence_in(fork, k.a, k.b, k.c)) {
      rep.existence_grown += fork.levels.size() > before;
      return *r;
    }
    const HAlg& h = chain.levels[k.level];
    Represented r = generated_subalgebra(h, cat(cat(k.a, k.b), k.c));
    auto tr = [&](const Set& s) {
      Set out;
      for (Bits x : s) out.push_back(pull(r, x));
      return out;
    };
    Chain local;
    local.levels = {r.algebra};
    local.max_points = chain.max_points;
    ++rep.existence_local;
    if (auto v = existence_in(local, tr(k.a), tr(k.b), tr(k.c))) return *v;
    ++rep.existence_deferred;
    return false;
  }

  int stationary(const AxiomConfig& k) {
    const HAlg& h = chain.levels[k.level];
    Represented rb = generated_subalgebra(h, k.b);
    Represented rab = generated_subalgebra(h, cat(k.a, k.b));
    Represented rbc = generated_subalgebra(h, cat(k.b, k.c));
    Diagram d{rb.algebra, rab.algebra, rbc.algebra, inclusion_between(rb, rab), inclusion_between(rb, rbc)};
    const std::string key = diagram_key(d);
    auto it = stationary_cache.find(key);
    if (it != stationary_cache.end()) return it->second;
    ++rep.stationarity_diagrams;
    StationarityProbe pr;
    try {
      pr = stationarity_probe(d);
    } catch (const SizeError&) {
      // No free amalgam at all within the bound.
    }
    const int v = pr.decided ? (pr.stationary ? 1 : 0) : -1;
    stationary_cache.emplace(key, v);
    return v;
  }

  void run() {
    rep.configs = configs.size();
    for (const char* name : {"existence", "invariance", "monotonicity", "monotonicity_base", "symmetry",
                             "transitivity", "base_restriction", "stationarity"})
      rep.axioms[name];
    const int top = chain.top_index();
    for (std::size_t i = 0; i < configs.size(); ++i) {
      const AxiomConfig& k = configs[i];
      const HAlg& h = chain.levels[k.level];
      std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ i);
      const bool abc = indep_rel(h, k.a, k.b, k.c);
      const bool cba = indep_rel(h, k.c, k.b, k.a);
      note("symmetry", true, abc == cba, i);

      // Same verdict in the top level and on a relabelled abstract copy.
      const Hom up = chain.embed(k.level, top);
      const bool in_top = indep_rel(chain.top(), lift(up, k.a), lift(up, k.b), lift(up, k.c));
      note("invariance", true, abc == in_top && abc == relabeled_verdict(h, k, rng), i);

      note("base_restriction", true, abc == indep_rel(h, cat(k.a, k.b), k.b, cat(k.b, k.c)), i);

      const bool a_cd = indep_rel(h, k.a, k.b, cat(k.c, k.d));
      note("monotonicity", a_cd, abc, i);
      note("monotonicity_base", a_cd, indep_rel(h, k.a, cat(k.b, k.c), k.d), i);

      const bool over_bc = indep_rel(h, k.a, cat(k.b, k.c), k.d);
      note("transitivity", over_bc && abc, indep_rel(h, k.a, k.b, k.d), i);

      const bool exists = existence(k);
      note("existence", true, exists, i);
      // The verdict only sees the diagram, which A and its free copy share.
      if (abc || exists) {
        const int st = stationary(k);
        if (st < 0)
          ++rep.stationarity_undecided;
        else
          note("stationarity", true, st == 1, i);
      }
    }
  }
};

}  // namespace

bool AxiomReport::ok(const std::string& axiom) const {
  auto it = axioms.find(axiom);
  return it != axioms.end() && it->second.failed == 0;
}

std::vector<AxiomConfig> sample_configs(const Chain& c, std::size_t count, std::uint64_t seed,
                                        std::size_t max_generated) {
  std::vector<AxiomConfig> out;
  if (c.levels.size() < 2) return out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    AxiomConfig k;
    k.level = 1 + static_cast<int>(i % (c.levels.size() - 1));
    const HAlg& h = c.levels[k.level];
    k.a = {random_element(h, rng)};
    if (rng() & 1) k.b = {random_element(h, rng)};
    k.c = {random_element(h, rng)};
    k.d = {random_element(h, rng)};
    try {
      generated_elements(h, cat(cat(k.a, k.b), cat(k.c, k.d)), max_generated);
    } catch (const SizeError&) {
      --i;
      continue;
    }
    out.push_back(std::move(k));
  }
  return out;
}

AxiomReport axiom_suite(const Chain& c, const std::vector<AxiomConfig>& configs) {
  Suite s{c, configs, {}, {}};
  s.run();
  return s.rep;
}

}  // namespace heytica

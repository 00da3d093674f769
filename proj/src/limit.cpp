#include "heytica/limit.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "heytica/catalog.hpp"

namespace heytica {

Hom Chain::embed(int from, int to) const {
  if (from < 0 || to > top_index() || from > to) throw BadElement("bad level range");
  Hom h = identity_hom(levels[from]);
  for (int i = from; i < to; ++i) h = compose(h, steps[i]);
  return h;
}

Chain new_chain() {
  Chain c;
  c.levels.push_back(algebra_of(chain(1)));
  return c;
}

/// Hom a -> b from its action on elements; the dual point of x is the least
/// element whose image holds x, which must be principal.
Hom element_hom(const HAlg& a, const HAlg& b, const std::function<Bits(Bits)>& f) {
  const Poset& pa = a.dual();
  std::vector<int> map(b.points(), -1);
  for (int x = 0; x < b.points(); ++x) {
    Bits m = a.top();
    for (Bits e : a.elements())
      if (has(f(e), x)) m &= e;
    for (int y = 0; y < pa.size(); ++y)
      if (pa.up(y) == m) map[x] = y;
    if (map[x] < 0) throw ConstructionError("element map is not a homomorphism");
  }
  Hom h{a, b, PMorphism{b.dual(), a.dual(), map}};
  for (Bits e : a.elements())
    if (h(e) != f(e)) throw ConstructionError("element map is not a homomorphism");
  return h;
}


std::optional<Hom> find_compatible(const HAlg& h, const ExtensionTask& t) {
  const Poset& pb = t.pair.target.dual();
  const Poset& ph = h.dual();
  std::vector<Bits> allowed(ph.size(), 0);
  for (int u = 0; u < ph.size(); ++u)
    for (int v = 0; v < pb.size(); ++v)
      if (t.pair.dual(v) == t.base.dual(u)) allowed[u] |= bit(v);
  std::optional<Hom> out;
  for_each_pmorphism(ph, pb, true, allowed, [&](const std::vector<int>& f) {
    out = Hom{t.pair.target, h, PMorphism{ph, pb, f}};
    return false;
  });
  return out;
}

Hom realize(Chain& c, const ExtensionTask& t) {
  if (!(t.base.target.dual() == c.top().dual())) throw TargetMismatch("task base does not land in the top level");
  if (!(t.base.source.dual() == t.pair.source.dual())) throw TargetMismatch("task legs have different sources");
  if (static_cast<int>(c.levels.size()) >= c.max_levels) throw SizeError("chain has reached its level bound");
  const std::size_t n = fibered_product_size(t.base.dual, t.pair.dual);
  if (n > static_cast<std::size_t>(c.max_points))
    throw SizeError("next level would have " + std::to_string(n) + " dual points");
  Diagram d{t.pair.source, c.top(), t.pair.target, t.base, t.pair};
  // Element-level checks only while the levels stay listable.
  constexpr std::size_t kVerifyCap = 4096;
  const bool small = count_upsets(c.top().dual(), kVerifyCap + 1) <= kVerifyCap &&
                     count_upsets(t.pair.target.dual(), kVerifyCap + 1) <= kVerifyCap;
  Amalgam m = superamalgamate(d, small);
  c.levels.push_back(m.result);
  c.steps.push_back(m.into_left);
  return m.into_right;
}

std::vector<Hom> catalog_pairs(int bound) {
  std::vector<std::vector<HAlg>> algs(bound + 1);
  for (int n = 1; n <= bound; ++n)
    for (const auto& p : enumerate_posets(n)) algs[n].emplace_back(p);
  std::vector<Hom> out;
  for (int nb = bound; nb >= 2; --nb)
    for (const auto& b : algs[nb])
      for (int na = 1; na < nb; ++na)
        for (const auto& a : algs[na])
          for (auto& f : embeddings_between(a, b)) out.push_back(std::move(f));
  return out;
}

SaturationReport saturate(Chain& c, int pair_bound, int rounds, std::uint64_t seed) {
  if (pair_bound < 1 || rounds < 1) throw BadElement("saturate needs positive bounds");
  SaturationReport rep;
  const auto pairs = catalog_pairs(pair_bound);
  std::mt19937_64 rng(seed);
  for (int r = 0; r < rounds && r <= c.top_index(); ++r) {
    const int base = r;
    rep.base_levels.push_back(base);
    std::vector<std::pair<const Hom*, Hom>> tasks;
    for (const auto& pr : pairs)
      for (auto& e : embeddings_between(pr.source, c.levels[base])) tasks.emplace_back(&pr, std::move(e));
    if (seed != 0) {
      // Shuffle within runs of equal |dual B| only.
      std::size_t i = 0;
      while (i < tasks.size()) {
        std::size_t j = i;
        while (j < tasks.size() && tasks[j].first->target.points() == tasks[i].first->target.points()) ++j;
        for (std::size_t k = j - 1; k > i; --k) std::swap(tasks[k], tasks[i + rng() % (k - i + 1)]);
        i = j;
      }
    }
    for (const auto& [pr, e] : tasks) {
      ++rep.tasks;
      ExtensionTask t{*pr, compose(e, c.embed(base, c.top_index()))};
      if (find_compatible(c.top(), t)) {
        ++rep.already;
        continue;
      }
      try {
        realize(c, t);
        ++rep.realized;
      } catch (const SizeError&) {
        ++rep.deferred;
      }
    }
  }
  return rep;
}

std::vector<std::pair<Bits, Bits>> close_partial_iso(const HAlg& h, const PartialIso& p) {
  if (p.dom.size() != p.img.size()) throw ConstructionError("partial isomorphism has unequal sides");
  std::map<Bits, Bits> fwd, bwd;
  std::vector<std::pair<Bits, Bits>> all;
  auto add = [&](Bits x, Bits y) {
    if (!h.contains(x) || !h.contains(y)) throw BadElement("partial isomorphism leaves the algebra");
    auto f = fwd.find(x);
    auto b = bwd.find(y);
    if (f != fwd.end() || b != bwd.end()) {
      if (f == fwd.end() || f->second != y || b == bwd.end() || b->second != x)
        throw ConstructionError("generators do not extend to an isomorphism");
      return;
    }
    fwd[x] = y;
    bwd[y] = x;
    all.emplace_back(x, y);
  };
  add(h.bottom(), h.bottom());
  add(h.top(), h.top());
  for (std::size_t i = 0; i < p.dom.size(); ++i) add(p.dom[i], p.img[i]);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const auto [x1, y1] = all[i];
      const auto [x2, y2] = all[j];
      add(x1 & x2, y1 & y2);
      add(x1 | x2, y1 | y2);
      add(h.implies(x1, x2), h.implies(y1, y2));
      add(h.implies(x2, x1), h.implies(y2, y1));
    }
  std::sort(all.begin(), all.end());
  return all;
}

PartialIso extend_partial_iso(Chain& c, const PartialIso& p, Bits e, bool forward) {
  if (!forward) {
    PartialIso r = extend_partial_iso(c, PartialIso{p.img, p.dom}, e, true);
    return PartialIso{r.img, r.dom};
  }
  const HAlg h = c.top();
  if (!h.contains(e)) throw BadElement("target element is not in the top level");
  const auto graph = close_partial_iso(h, p);
  std::map<Bits, Bits> fwd(graph.begin(), graph.end());
  PartialIso out = p;
  out.dom.push_back(e);
  if (auto it = fwd.find(e); it != fwd.end()) {
    out.img.push_back(it->second);
    return out;
  }
  // Sending e to itself is the cheapest candidate.
  out.img.push_back(e);
  try {
    close_partial_iso(h, out);
    return out;
  } catch (const ConstructionError&) {
    out.img.pop_back();
  }
  std::vector<Bits> gens = p.dom;
  Represented rd = generated_subalgebra(h, gens);
  gens.push_back(e);
  Represented rb = generated_subalgebra(h, gens);
  std::map<Bits, Bits> back_b;
  for (Bits x : rb.algebra.elements()) back_b[rb.inclusion(x)] = x;
  Hom pair = element_hom(rd.algebra, rb.algebra, [&](Bits a) { return back_b.at(rd.inclusion(a)); });
  Hom base = element_hom(rd.algebra, h, [&](Bits a) { return fwd.at(rd.inclusion(a)); });
  ExtensionTask t{pair, base};
  const Bits e_abs = back_b.at(e);
  if (auto g = find_compatible(h, t)) {
    out.img.push_back((*g)(e_abs));
    return out;
  }
  Hom g = realize(c, t);
  const Hom& step = c.steps.back();
  for (Bits& x : out.dom) x = step(x);
  for (Bits& y : out.img) y = step(y);
  out.img.push_back(g(e_abs));
  close_partial_iso(c.top(), out);
  return out;
}

DenseStep dense_step(const HAlg& h, Bits a, Bits b) {
  if (!h.contains(a) || !h.contains(b) || a == b || !h.leq(a, b)) throw BadElement("densify needs a < b");
  const Poset& p = h.dual();
  const Bits d = b & ~a;
  DenseStep s;
  if (popcount(d) >= 2) {
    // A point of b \ a maximal there has everything above it in a.
    for_each_bit(d, [&](int x) {
      if (s.c == 0 && (p.strict_up(x) & d) == 0) s.c = a | bit(x);
    });
    return s;
  }
  const int w = members(d).front();
  SplitResult sp = split_point(p, w);
  HAlg grown(sp.poset);
  s.growth.extension = Hom{h, grown, sp.collapse};
  s.c = (*s.growth.extension)(a) | bit(sp.upper);
  const Bits lo = s.growth.lift(a), hi = s.growth.lift(b);
  if (!grown.contains(s.c) || s.c == lo || s.c == hi || !grown.leq(lo, s.c) || !grown.leq(s.c, hi))
    throw ConstructionError("split did not separate the cover");
  return s;
}

JoinStep join_step(const HAlg& h, Bits a) {
  if (!h.contains(a)) throw BadElement("not an element");
  if (a == 0) throw ZeroElement("0 is the empty join");
  const Poset& p = h.dual();
  std::vector<int> mins;
  for_each_bit(a, [&](int x) {
    if ((p.strict_down(x) & a) == 0) mins.push_back(x);
  });
  JoinStep s;
  if (mins.size() >= 2) {
    s.b = a & ~bit(mins[0]);
    s.c = a & ~bit(mins[1]);
    return s;
  }
  Doubled dbl = double_upset(h, a);
  s.growth.extension = dbl.embedding;
  s.b = dbl.copy1;
  s.c = dbl.copy2;
  const Bits lifted = dbl.embedding(a);
  const HAlg& g = dbl.algebra;
  if (!g.contains(s.b) || !g.contains(s.c) || (s.b | s.c) != lifted || s.b == lifted || s.c == lifted)
    throw ConstructionError("doubling did not split the element");
  return s;
}

namespace {

Hom grow_by(Chain& c, const Hom& ext) { return realize(c, ExtensionTask{ext, identity_hom(c.top())}); }

}  // namespace

Bits densify(Chain& c, Bits a, Bits b) {
  DenseStep s = dense_step(c.top(), a, b);
  if (!s.growth.extension) return s.c;
  return grow_by(c, *s.growth.extension)(s.c);
}

std::pair<Bits, Bits> break_join_irreducible(Chain& c, Bits a) {
  JoinStep s = join_step(c.top(), a);
  if (!s.growth.extension) return {s.b, s.c};
  Hom g = grow_by(c, *s.growth.extension);
  return {g(s.b), g(s.c)};
}

namespace {

bool dense_ok(const HAlg& h, Bits a, Bits b, const DenseStep& s) {
  const HAlg& g = s.growth.result(h);
  const Bits lo = s.growth.lift(a), hi = s.growth.lift(b);
  return g.contains(s.c) && s.c != lo && s.c != hi && g.leq(lo, s.c) && g.leq(s.c, hi);
}

bool join_ok(const HAlg& h, Bits a, const JoinStep& s) {
  const HAlg& g = s.growth.result(h);
  const Bits x = s.growth.lift(a);
  return g.contains(s.b) && g.contains(s.c) && (s.b | s.c) == x && s.b != x && s.c != x && g.leq(s.b, x) &&
         g.leq(s.c, x);
}

Bits random_upset(const Poset& p, std::mt19937_64& rng) {
  // Up-closure of a sparse random set, so sizes spread out.
  const int k = static_cast<int>(rng() % (p.size() + 1));
  Bits s = 0;
  for (int i = 0; i < k; ++i)
    if (rng() % 3 == 0) s |= bit(static_cast<int>(rng() % p.size()));
  return p.up_closure(s);
}

bool listable(const HAlg& h, std::size_t cap) { return count_upsets(h.dual(), cap + 1) <= cap; }

}  // namespace

LimitCheck check_density(const Chain& c, std::size_t samples, std::uint64_t seed, std::size_t list_cap) {
  LimitCheck r;
  auto fail = [&](const std::string& why) {
    if (r.ok) r.failure = why;
    r.ok = false;
  };
  for (int li = 0; li <= c.top_index(); ++li) {
    const HAlg& h = c.levels[li];
    const Poset& p = h.dual();
    if (listable(h, list_cap)) {
      // The answer for a < b depends on a and one point x of b \ a with
      // a | x an up-set: x itself when b = a | x, else a point kept as is.
      r.exhaustive_levels.push_back(li);
      std::vector<DenseStep> cover(p.size());
      for (int x = 0; x < p.size(); ++x) cover[x] = dense_step(h, p.strict_up(x), p.up(x));
      for (Bits a : h.elements())
        for (int x = 0; x < p.size(); ++x) {
          if (has(a, x) || (p.strict_up(x) & ~a) != 0) continue;
          ++r.inputs;
          const Bits b = a | bit(x);
          DenseStep s;
          s.growth = cover[x].growth;
          s.c = s.growth.lift(a) | (cover[x].c & ~s.growth.lift(p.strict_up(x)));
          if (!dense_ok(h, a, b, s)) fail("cover at level " + std::to_string(li));
          if (!h.contains(b)) fail("a | x is not an element");
        }
      if (h.size() <= 512)
        for (Bits a : h.elements())
          for (Bits b : h.elements())
            if (a != b && h.leq(a, b)) {
              ++r.inputs;
              if (!dense_ok(h, a, b, dense_step(h, a, b))) fail("pair at level " + std::to_string(li));
            }
      continue;
    }
    for (int x = 0; x < p.size(); ++x) {
      ++r.point_checks;
      const DenseStep s = dense_step(h, p.strict_up(x), p.up(x));
      // The split keeps x's strict up-set above the upper copy only.
      const auto& e = *s.growth.extension;
      const Poset& q = e.target.dual();
      const Bits upper = s.c & ~e(p.strict_up(x));
      if (popcount(upper) != 1 || q.strict_up(members(upper).front()) != e(p.strict_up(x)))
        fail("split point check at level " + std::to_string(li));
      if (!dense_ok(h, p.strict_up(x), p.up(x), s)) fail("split at level " + std::to_string(li));
    }
    if (li == c.top_index()) {
      std::mt19937_64 rng(seed);
      for (std::size_t k = 0; k < samples; ++k) {
        const Bits a = random_upset(p, rng);
        Bits b = a | random_upset(p, rng);
        if (a == b) {
          Bits out = p.all() & ~a;
          if (out == 0) continue;
          b = p.up_closure(a | bit(members(out).back()));
        }
        ++r.sampled;
        if (!dense_ok(h, a, b, dense_step(h, a, b))) fail("sampled pair at the top");
      }
    }
  }
  return r;
}

LimitCheck check_irreducible(const Chain& c, std::size_t samples, std::uint64_t seed, std::size_t list_cap) {
  LimitCheck r;
  auto fail = [&](const std::string& why) {
    if (r.ok) r.failure = why;
    r.ok = false;
  };
  for (int li = 0; li <= c.top_index(); ++li) {
    const HAlg& h = c.levels[li];
    const Poset& p = h.dual();
    std::vector<JoinStep> principal(p.size());
    for (int x = 0; x < p.size(); ++x) {
      principal[x] = join_step(h, p.up(x));
      if (!join_ok(h, p.up(x), principal[x])) fail("doubling at level " + std::to_string(li));
    }
    if (listable(h, list_cap)) {
      r.exhaustive_levels.push_back(li);
      for (Bits a : h.elements()) {
        if (a == 0) continue;
        ++r.inputs;
        if (!join_ok(h, a, join_step(h, a))) fail("element at level " + std::to_string(li));
      }
      continue;
    }
    r.point_checks += p.size();
    if (li == c.top_index()) {
      std::mt19937_64 rng(seed);
      for (std::size_t k = 0; k < samples; ++k) {
        const Bits a = random_upset(p, rng);
        if (a == 0) continue;
        ++r.sampled;
        if (!join_ok(h, a, join_step(h, a))) fail("sampled element at the top");
      }
    }
  }
  return r;
}

bool envelope_tower_commutes(const Chain& c, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (const Hom& f : c.steps) {
    const BoolEnv src = envelope(f.source);
    const BoolEnv tgt = envelope(f.target);
    const BoolHom bf = lift_hom(f);
    std::vector<Bits> subsets;
    if (src.points() <= 12) {
      for (Bits s = 0; s <= src.top(); ++s) subsets.push_back(s);
    } else {
      for (std::size_t k = 0; k < samples; ++k) subsets.push_back(rng() & src.top());
    }
    for (Bits s : subsets)
      if (bf(src.interior(s)) != tgt.interior(bf(s))) return false;
  }
  return true;
}

bool chain_valid(const Chain& c) {
  if (c.levels.empty() || c.steps.size() + 1 != c.levels.size()) return false;
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const Hom& f = c.steps[i];
    if (!(f.source.dual() == c.levels[i].dual()) || !(f.target.dual() == c.levels[i + 1].dual())) return false;
    if (!is_pmorphism(f.dual.map, f.dual.source, f.dual.target) || !f.injective()) return false;
  }
  return true;
}

}  // namespace heytica

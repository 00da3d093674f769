#include "heytica/orderings.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>

#include "heytica/catalog.hpp"

namespace heytica {

std::uint64_t NatOrder::key(Bits a) const {
  std::uint64_t k = 0;
  for_each_bit(a, [&](int p) { k |= std::uint64_t{1} << rank[p]; });
  return k;
}

std::vector<Bits> NatOrder::full_order() const {
  std::vector<Bits> out = algebra.elements();
  std::sort(out.begin(), out.end(), [&](Bits x, Bits y) { return key(x) < key(y); });
  return out;
}

std::vector<int> NatOrder::as_permutation() const {
  std::vector<int> out;
  for (Bits x : full_order()) out.push_back(algebra.index_of(x));
  return out;
}

std::vector<int> prime_support(const HAlg& h, Bits b) {
  if (!h.contains(b)) throw BadElement("prime_support needs an element of the algebra");
  return members(b);
}

NatOrder natural_order(const HAlg& h, const std::vector<int>& prime_order) {
  const int n = h.points();
  if (static_cast<int>(prime_order.size()) != n) throw NotExtension("prime order has the wrong length");
  NatOrder o{h, prime_order, std::vector<int>(n, -1)};
  for (int k = 0; k < n; ++k) {
    const int p = prime_order[k];
    if (p < 0 || p >= n || o.rank[p] >= 0) throw NotExtension("prime order is not a permutation");
    o.rank[p] = k;
  }
  const Poset& d = h.dual();
  for (int p = 0; p < n; ++p)
    for_each_bit(d.strict_down(p), [&](int q) {
      if (o.rank[p] > o.rank[q])
        throw NotExtension("join-prime " + std::to_string(p) + " must precede " + std::to_string(q));
    });
  return o;
}

std::vector<NatOrder> all_natural_orders(const HAlg& h, std::size_t max_count) {
  const Poset& d = h.dual();
  std::vector<Bits> before(d.size());
  for (int p = 0; p < d.size(); ++p) before[p] = d.strict_down(p);
  std::vector<NatOrder> out;
  for_each_linear_extension(d.size(), before, [&](const std::vector<int>& seq) {
    if (out.size() == max_count) throw SizeError("too many natural orders");
    out.push_back(natural_order(h, seq));
    return true;
  });
  return out;
}

bool is_admissible(const HAlg& h, const std::vector<int>& element_order) {
  const auto& el = h.elements();
  if (element_order.size() != el.size()) return false;
  std::vector<int> pos(el.size(), -1);
  for (std::size_t k = 0; k < element_order.size(); ++k) {
    const int e = element_order[k];
    if (e < 0 || e >= static_cast<int>(el.size()) || pos[e] >= 0) return false;
    pos[e] = static_cast<int>(k);
  }
  const Poset& d = h.dual();
  std::vector<int> primes(d.size());
  std::iota(primes.begin(), primes.end(), 0);
  std::sort(primes.begin(), primes.end(),
            [&](int p, int q) { return pos[h.index_of(d.up(p))] < pos[h.index_of(d.up(q))]; });
  try {
    return natural_order(h, primes).as_permutation() == element_order;
  } catch (const NotExtension&) {
    return false;
  }
}

bool restricts_to(const Hom& f, const NatOrder& big, const NatOrder& small) {
  const auto& el = f.source.elements();
  std::vector<std::uint64_t> kb, ks;
  for (Bits x : el) {
    kb.push_back(big.key(f(x)));
    ks.push_back(small.key(x));
  }
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = 0; j < el.size(); ++j)
      if ((ks[i] < ks[j]) != (kb[i] < kb[j])) return false;
  return true;
}

NatOrder extend_order(const Hom& f, const NatOrder& o) {
  const Poset& p2 = f.target.dual();
  const PMorphism& pi = f.dual;
  const int n = p2.size();
  std::vector<Bits> before(n, 0);
  for (int p = 0; p < n; ++p) {
    before[p] |= p2.strict_down(p);
    for (int q = 0; q < n; ++q)
      if (o.rank[pi(p)] < o.rank[pi(q)]) before[p] |= bit(q);
  }
  return natural_order(f.target, first_linear_extension(n, before));
}

std::optional<NatOrder> joint_order(const Hom& left, const NatOrder& ob, const Hom& right, const NatOrder& oc) {
  const HAlg& res = left.target;
  const Poset& q = res.dual();
  // Place points from the greatest down. A placed point settles every
  // element pair whose preimages differ there, so prune on those.
  struct Pair {
    Bits diff;
    Bits greater;
  };
  std::vector<Pair> pairs;
  auto add_pairs = [&](const Hom& f, const NatOrder& o) {
    const auto& el = f.source.elements();
    for (std::size_t i = 0; i < el.size(); ++i)
      for (std::size_t j = i + 1; j < el.size(); ++j) {
        const Bits x = f(el[i]), y = f(el[j]);
        pairs.push_back(Pair{x ^ y, o.less(el[i], el[j]) ? y : x});
      }
  };
  add_pairs(left, ob);
  add_pairs(right, oc);
  std::vector<int> picked;
  std::function<bool(Bits, const std::vector<int>&)> rec = [&](Bits rem, const std::vector<int>& open) {
    if (rem == 0) return true;
    bool found = false;
    for_each_bit(rem, [&](int p) {
      if (found || (q.strict_down(p) & rem) != 0) return;
      std::vector<int> rest;
      for (int k : open) {
        if (!has(pairs[k].diff, p))
          rest.push_back(k);
        else if (!has(pairs[k].greater, p))
          return;
      }
      picked.push_back(p);
      if (rec(rem & ~bit(p), rest))
        found = true;
      else
        picked.pop_back();
    });
    return found;
  };
  std::vector<int> open(pairs.size());
  std::iota(open.begin(), open.end(), 0);
  if (!rec(q.all(), open)) return std::nullopt;
  std::reverse(picked.begin(), picked.end());
  NatOrder o = natural_order(res, picked);
  if (!restricts_to(left, o, ob) || !restricts_to(right, o, oc))
    throw ConstructionError("joint order fails to restrict");
  return o;
}

OrderedAmalgam ordered_amalgamate(const Diagram& d, const NatOrder& ob, const NatOrder& oc) {
  for (Bits x : d.a.elements())
    for (Bits y : d.a.elements())
      if (ob.less(d.e_b(x), d.e_b(y)) != oc.less(d.e_c(x), d.e_c(y)))
        throw NotExtension("the two orders disagree on the base");
  Amalgam m = superamalgamate(d);
  if (auto o = joint_order(m.into_left, ob, m.into_right, oc)) return OrderedAmalgam{m, *o, true, true};
  // The product admits no such order. Try sub-posets of it whose
  // projections stay surjective p-morphisms, largest first, preferring
  // independent ones.
  const Poset& full = m.result.dual();
  const int k = full.size();
  if (k > 20) throw SizeError("fibered product too large for the ordered fallback");
  const Poset& p1 = d.b.dual();
  const Poset& p2 = d.c.dual();
  std::vector<Bits> subsets;
  for (Bits s = 1; s < (Bits{1} << k); ++s) subsets.push_back(s);
  std::stable_sort(subsets.begin(), subsets.end(), [](Bits x, Bits y) { return popcount(x) > popcount(y); });
  std::optional<OrderedAmalgam> loose;
  for (Bits s : subsets) {
    const std::vector<int> pts = members(s);
    Poset q = full.induced(pts);
    std::vector<int> l, r;
    std::vector<std::pair<int, int>> prs;
    for (int p : pts) {
      l.push_back(m.pairs[p].first);
      r.push_back(m.pairs[p].second);
      prs.push_back(m.pairs[p]);
    }
    if (!is_pmorphism(l, q, p1) || !is_pmorphism(r, q, p2)) continue;
    HAlg g(q);
    Amalgam alt{g, Hom{d.b, g, PMorphism{q, p1, l}}, Hom{d.c, g, PMorphism{q, p2, r}}, prs, true};
    if (!alt.into_left.injective() || !alt.into_right.injective()) continue;
    const bool indep = check_amalgam(d, alt).ok();
    if (!indep && loose) continue;
    auto o = joint_order(alt.into_left, ob, alt.into_right, oc);
    if (!o) continue;
    if (indep) return OrderedAmalgam{alt, *o, false, true};
    loose = OrderedAmalgam{alt, *o, false, false};
  }
  if (loose) return *loose;
  throw CycleError("no sub-amalgam of the fibered product carries an order restricting to both inputs");
}

KptReport kpt_witness() {
  KptReport r;
  r.a = algebra_of(antichain(2));  // atoms a = {0}, b = {1}
  r.b = algebra_of(antichain(3));  // atoms x = {0}, y = {1}, z = {2}
  // a -> x, b -> y v z;  a -> y, b -> x v z
  r.iota1 = Hom{r.a, r.b, PMorphism{r.b.dual(), r.a.dual(), {0, 1, 1}}};
  r.iota2 = Hom{r.a, r.b, PMorphism{r.b.dual(), r.a.dual(), {1, 0, 1}}};
  r.orders_a = {natural_order(r.a, {0, 1}), natural_order(r.a, {1, 0})};
  r.orders_b = all_natural_orders(r.b);
  const Hom* iotas[2] = {&r.iota1, &r.iota2};
  r.embeds.assign(2, std::vector<bool>(r.orders_b.size()));
  for (int i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < r.orders_b.size(); ++j)
      r.embeds[i][j] = restricts_to(*iotas[i], r.orders_b[j], r.orders_a[i]);
  const std::vector<int> zyx{2, 1, 0};
  for (std::size_t j = 0; j < r.orders_b.size(); ++j)
    if (r.orders_b[j].prime_order == zyx) r.witness_order = static_cast<int>(j);
  if (r.witness_order < 0) throw ConstructionError("z <' y <' x is not admissible");
  r.condition_i = !r.embeds[0][r.witness_order] && !r.embeds[1][r.witness_order];
  r.condition_ii = false;
  for (std::size_t j = 0; j < r.orders_b.size(); ++j)
    if (!r.embeds[0][j] || !r.embeds[1][j]) r.condition_ii = true;
  return r;
}

ForgetfulReport order_forgetful_counterexample() {
  ForgetfulReport r;
  Poset two_chains = disjoint_union(chain(2), chain(2));  // 0 < 1, 2 < 3
  Poset collapsed = disjoint_union(chain(2), chain(1));   // 0 < 1, 2
  PMorphism collapse{two_chains, collapsed, {0, 1, 2, 2}};
  if (!is_pmorphism(collapse.map, two_chains, collapsed)) throw ConstructionError("collapse is not p-morphic");
  r.embedding = dual_of_pmorphism(collapse);
  r.h = r.embedding.source;
  r.h_prime = r.embedding.target;
  auto aut_h = automorphisms(r.h);
  auto aut_hp = automorphisms(r.h_prime);
  r.aut_h = aut_h.size();
  r.aut_h_prime = aut_hp.size();
  r.a = 0b0011;
  r.b = 0b1100;
  const Hom* phi = nullptr;
  for (const auto& g : aut_hp)
    if (g(r.a) == r.b) phi = &g;
  if (!phi) throw ConstructionError("no automorphism swaps the two chains");
  for (const auto& o : all_natural_orders(r.h_prime))
    if (o.less(r.a, r.b)) {
      r.order = o;
      break;
    }
  if (r.order.rank.empty()) throw ConstructionError("no admissible order with a before b");
  // x <phi y iff phi^-1 x < phi^-1 y; phi is an involution here.
  std::vector<int> moved_primes;
  for (int p : r.order.prime_order) moved_primes.push_back(phi->dual(p));
  r.moved = natural_order(r.h_prime, moved_primes);
  for (Bits x : r.h_prime.elements())
    for (Bits y : r.h_prime.elements())
      if (r.moved.less(x, y) != r.order.less((*phi)(x), (*phi)(y)))
        throw ConstructionError("moved order is not the image order");

  const auto& el = r.h.elements();
  auto restrict_perm = [&](const NatOrder& o) {
    std::vector<int> idx(el.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int i, int j) { return o.less(r.embedding(el[i]), r.embedding(el[j])); });
    return idx;
  };
  const auto r1 = restrict_perm(r.order);
  const auto r2 = restrict_perm(r.moved);
  r.restrictions_admissible = is_admissible(r.h, r1) && is_admissible(r.h, r2);
  r.restrictions_differ = r1 != r2;
  // a and b are images of {0,1} and {2} in h.
  r.differ_at_ab = r.order.less(r.a, r.b) != r.moved.less(r.a, r.b);
  r.same_orbit = false;
  for (const auto& g : aut_h) {
    std::vector<int> moved(r1.size());
    for (std::size_t k = 0; k < r1.size(); ++k) moved[k] = r.h.index_of(g(el[r1[k]]));
    if (moved == r2) r.same_orbit = true;
  }
  return r;
}

}  // namespace heytica

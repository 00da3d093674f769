#include "heytica/envelope.hpp"

#include <algorithm>
#include <map>

namespace heytica {

Bits BoolEnv::interior(Bits s) const {
  const Poset& p = base.dual();
  Bits out = 0;
  for_each_bit(s, [&](int i) {
    if ((p.up(i) & ~s) == 0) out |= bit(i);
  });
  return out;
}

std::size_t BoolEnv::size() const {
  if (points() >= 64) throw SizeError("envelope too large to count");
  return std::size_t{1} << points();
}

std::vector<Bits> BoolEnv::elements() const {
  if (points() > 20) throw SizeError("envelope has more than 2^20 elements");
  std::vector<Bits> out(size());
  for (Bits s = 0; s < out.size(); ++s) out[s] = s;
  return out;
}

BoolEnv envelope(const HAlg& h) {
  if (h.points() > kMaxPoints) throw SizeError("dual exceeds 64 points");
  return BoolEnv{h};
}

BoolHom lift_hom(const Hom& f) {
  if (f.dual.source.size() != f.target.points() || f.dual.target.size() != f.source.points())
    throw NoDual("homomorphism carries no dual p-morphism");
  return BoolHom{envelope(f.source), envelope(f.target), f.dual};
}

AtomlessSplit atomless_split(const HAlg& h, Bits b) {
  if (b == 0) throw ZeroElement("atomless_split needs a nonzero element");
  const int w = lowest(b);
  SplitResult s = split_point(h.dual(), w);
  Hom emb = dual_of_pmorphism(s.collapse);
  Bits lifted = s.collapse.preimage(b);
  // (b \ {w}) with w replaced by the lower copy only.
  Bits part = lifted & ~bit(s.upper);
  return AtomlessSplit{emb.target, emb, lifted, part, w};
}

std::vector<Bits> RegularAlg::atoms() const {
  std::vector<Bits> out;
  for (Bits a : elements) {
    if (a == 0) continue;
    bool atom = true;
    for (Bits b : elements)
      if (b != 0 && b != a && (b & ~a) == 0) {
        atom = false;
        break;
      }
    if (atom) out.push_back(a);
  }
  return out;
}

bool RegularAlg::is_boolean() const {
  const Bits one = host.top();
  auto in = [&](Bits a) { return std::binary_search(elements.begin(), elements.end(), a); };
  if (!in(0) || !in(one)) return false;
  for (Bits a : elements) {
    Bits c = complement(a);
    if (!in(c) || meet(a, c) != 0 || join(a, c) != one) return false;
    for (Bits b : elements) {
      if (!in(meet(a, b)) || !in(join(a, b))) return false;
      if (join(a, b) != join(b, a)) return false;
      if (meet(a, join(a, b)) != a || join(a, meet(a, b)) != a) return false;
      for (Bits d : elements)
        if (meet(a, join(b, d)) != join(meet(a, b), meet(a, d))) return false;
    }
  }
  return true;
}

RegularAlg regular_elements(const HAlg& h) {
  RegularAlg r{h, {}};
  for (Bits a : h.elements())
    if (r.contains(a)) r.elements.push_back(a);
  std::sort(r.elements.begin(), r.elements.end());
  return r;
}

Forestified forestify(const HAlg& h) {
  const Poset& p = h.dual();
  if (p.is_forest()) {
    std::vector<std::vector<int>> paths;
    for (int i = 0; i < p.size(); ++i) {
      std::vector<int> path;
      for_each_bit(p.down(i), [&](int j) { path.push_back(j); });
      std::sort(path.begin(), path.end(), [&](int x, int y) { return p.less(x, y); });
      paths.push_back(path);
    }
    return Forestified{h, identity_hom(h), paths};
  }
  // Breadth-first over cover paths from minimal points.
  std::vector<std::vector<int>> succ(p.size());
  for (auto [i, j] : p.covers()) succ[i].push_back(j);
  std::vector<std::vector<int>> paths;
  std::vector<int> parent;
  for_each_bit(p.minimal(), [&](int m) {
    paths.push_back({m});
    parent.push_back(-1);
  });
  for (std::size_t k = 0; k < paths.size(); ++k) {
    if (paths.size() > static_cast<std::size_t>(kMaxPoints))
      throw SizeError("unravelled dual exceeds 64 points");
    for (int j : succ[paths[k].back()]) {
      auto next = paths[k];
      next.push_back(j);
      paths.push_back(std::move(next));
      parent.push_back(static_cast<int>(k));
    }
  }
  if (paths.size() > static_cast<std::size_t>(kMaxPoints))
    throw SizeError("unravelled dual exceeds 64 points");
  const int m = static_cast<int>(paths.size());
  std::vector<Bits> up(m, 0);
  for (int k = m - 1; k >= 0; --k) {
    up[k] |= bit(k);
    if (parent[k] >= 0) up[parent[k]] |= up[k];
  }
  Poset forest = Poset::from_up_sets(up);
  std::vector<int> last(m);
  for (int k = 0; k < m; ++k) last[k] = paths[k].back();
  Hom emb = dual_of_pmorphism(PMorphism{forest, p, last});
  return Forestified{emb.target, emb, paths};
}

Doubled double_upset(const HAlg& h, Bits a) {
  const Poset& p = h.dual();
  if (!h.contains(a)) throw BadElement("double_upset needs an up-set");
  const int n = p.size();
  const int k = popcount(a);
  if (n + k > kMaxPoints) throw SizeError("doubled dual exceeds 64 points");
  // Copy 1 keeps the original indices; copy 2 is appended in index order.
  std::vector<int> second(n, -1);
  std::vector<int> collapse(n);
  for (int i = 0; i < n; ++i) collapse[i] = i;
  int next = n;
  for_each_bit(a, [&](int y) {
    second[y] = next++;
    collapse.push_back(y);
  });
  std::vector<Bits> up(n + k, 0);
  for (int i = 0; i < n; ++i) {
    Bits u = p.up(i);
    if (has(a, i)) {
      up[i] = u;
      Bits v = 0;
      for_each_bit(u, [&](int y) { v |= bit(second[y]); });
      up[second[i]] = v;
    } else {
      Bits v = u;
      for_each_bit(u & a, [&](int y) { v |= bit(second[y]); });
      up[i] = v;
    }
  }
  Poset q = Poset::from_up_sets(up);
  Hom emb = dual_of_pmorphism(PMorphism{q, p, collapse});
  Bits c2 = 0;
  for_each_bit(a, [&](int y) { c2 |= bit(second[y]); });
  return Doubled{emb.target, emb, a, c2};
}

RSplit r_split(const HAlg& h, Bits a) {
  const Poset& p = h.dual();
  if (!p.is_forest()) throw NotForest("r_split needs a forest dual");
  if (a == 0 || !h.contains(a)) throw NotPrincipal("r_split needs a principal up-set");
  Bits mins = 0;
  for_each_bit(a, [&](int i) {
    if ((p.strict_down(i) & a) == 0) mins |= bit(i);
  });
  if (popcount(mins) != 1) throw NotPrincipal("element is not a principal up-set");
  const int x = lowest(mins);
  if (p.strict_down(x) == 0) return RSplit{h, identity_hom(h), a, a, true};
  Doubled d = double_upset(h, a);
  return RSplit{d.algebra, d.embedding, d.copy1, d.copy2, false};
}

namespace {

void require(bool ok, const std::string& stage) {
  if (!ok) throw ConstructionError("six_atom_witness: " + stage);
}

bool is_regular(const HAlg& h, Bits a) { return h.neg(h.neg(a)) == a; }

}  // namespace

SixAtomReport six_atom_witness() {
  SixAtomReport rep;
  const HAlg two = algebra_of(chain(1));
  const HAlg c3 = algebra_of(chain(2));
  const Bits a = bit(1);  // 0 < a < 1
  rep.stages.emplace_back("2", two);
  rep.stages.emplace_back("C3", c3);

  // D = C3 <- 2 -> C3
  PMorphism to_point{chain(2), chain(1), {0, 0}};
  FiberedProduct d = fibered_product(to_point, to_point);
  HAlg amal_d = algebra_of(d.poset);
  rep.stages.emplace_back("amalgam(D)", amal_d);
  const Bits a0 = d.left.preimage(a);
  const Bits a15 = d.right.preimage(a);
  require(a0 != a15, "a0 and a1.5 coincide");

  // H = H_r(a) over the C3 holding a1.5, and a second copy over the other C3.
  RSplit right = r_split(c3, a);
  RSplit left = r_split(c3, a);
  require(!right.root && is_regular(right.algebra, right.r1) && is_regular(right.algebra, right.r2),
          "r-split regularity");
  require((right.r1 | right.r2) == right.embedding(a), "r-split join");
  rep.stages.emplace_back("H", right.algebra);

  // D' = H <- C3 -> H
  FiberedProduct dp = fibered_product(right.embedding.dual, right.embedding.dual);
  HAlg amal_dp = algebra_of(dp.poset);
  rep.stages.emplace_back("amalgam(D')", amal_dp);

  // Ambient: H_left <- 2 -> amalgam(D'), the left leg standing for the C3
  // that holds a0.
  PMorphism l_pt{left.algebra.dual(), chain(1), std::vector<int>(left.algebra.points(), 0)};
  PMorphism r_pt{dp.poset, chain(1), std::vector<int>(dp.poset.size(), 0)};
  FiberedProduct amb = fibered_product(l_pt, r_pt);
  rep.ambient = algebra_of(amb.poset);
  rep.stages.emplace_back("ambient", rep.ambient);
  const HAlg& L = rep.ambient;

  auto via_mid = [&](Bits s) { return amb.right.preimage(dp.left.preimage(s)); };
  auto via_right = [&](Bits s) { return amb.right.preimage(dp.right.preimage(s)); };
  auto via_left = [&](Bits s) { return amb.left.preimage(s); };
  rep.generators = {via_left(left.r1),  via_left(left.r2),  via_mid(right.r1),
                    via_mid(right.r2), via_right(right.r1), via_right(right.r2)};
  for (Bits g : rep.generators) require(g != 0 && is_regular(L, g), "generator regularity");

  const Bits img15 = via_mid(right.embedding(a));
  require(img15 == via_right(right.embedding(a)), "D' legs disagree on C3");
  rep.split_join_ok = (rep.generators[2] | rep.generators[3]) == img15;

  // Atoms of the generated Boolean algebra are the nonzero minterms.
  const int g = static_cast<int>(rep.generators.size());
  std::vector<bool> nonzero(std::size_t{1} << g);
  for (unsigned m = 0; m < nonzero.size(); ++m) {
    Bits cell = L.top();
    for (int k = 0; k < g; ++k)
      cell &= (m >> k) & 1U ? rep.generators[k] : L.neg(rep.generators[k]);
    nonzero[m] = cell != 0;
    rep.atom_count += nonzero[m];
  }
  rep.six_atoms = rep.atom_count == 6;

  // a_ji -> a_(j+1 mod 3)i on generator positions 2j + i.
  auto shift = [&](unsigned m) {
    unsigned out = 0;
    for (int k = 0; k < g; ++k)
      if ((m >> k) & 1U) out |= 1U << ((k + 2) % g);
    return out;
  };
  rep.permutation_extends = true;
  for (unsigned m = 0; m < nonzero.size(); ++m)
    if (nonzero[m] != nonzero[shift(m)]) rep.permutation_extends = false;

  const auto& G = rep.generators;
  // phi{a11,a12} = {a21,a22}, phi{a21,a22} = {a01,a02}
  rep.joins_differ = (G[4] | G[5]) != (G[0] | G[1]);
  rep.identity_joins_equal = (G[2] | G[3]) == (G[4] | G[5]);
  require(rep.identity_joins_equal == rep.split_join_ok, "D' join bookkeeping");
  return rep;
}

}  // namespace heytica

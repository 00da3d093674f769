#include "heytica/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace heytica {

namespace {

std::vector<Bits> downs_of(const std::vector<Bits>& up) {
  std::vector<Bits> down(up.size(), 0);
  for (int i = 0; i < static_cast<int>(up.size()); ++i)
    for_each_bit(up[i], [&](int j) { down[j] |= bit(i); });
  return down;
}

void check_size(int n) {
  if (n < 0 || n > kMaxPoints)
    throw SizeError("poset with " + std::to_string(n) + " points exceeds " +
                    std::to_string(kMaxPoints));
}

}  // namespace

Poset Poset::from_up_sets(std::vector<Bits> up) {
  const int n = static_cast<int>(up.size());
  check_size(n);
  const Bits all = full_mask(n);
  for (int i = 0; i < n; ++i) {
    if (up[i] & ~all) throw BadElement("relation references a point >= n");
    if (!has(up[i], i)) throw BadElement("relation is not reflexive at " + std::to_string(i));
  }
  for (int i = 0; i < n; ++i) {
    for_each_bit(up[i], [&](int j) {
      if (j != i && has(up[j], i))
        throw CycleError("points " + std::to_string(i) + " and " + std::to_string(j) +
                         " are identified by the order");
      if ((up[j] & ~up[i]) != 0) throw BadElement("relation is not transitive");
    });
  }
  Poset p;
  p.down_ = downs_of(up);
  p.up_ = std::move(up);
  return p;
}

Bits Poset::up_closure(Bits s) const {
  Bits out = 0;
  for_each_bit(s, [&](int i) { out |= up_[i]; });
  return out;
}

Bits Poset::down_closure(Bits s) const {
  Bits out = 0;
  for_each_bit(s, [&](int i) { out |= down_[i]; });
  return out;
}

Bits Poset::maximal() const {
  Bits out = 0;
  for (int i = 0; i < size(); ++i)
    if (up_[i] == bit(i)) out |= bit(i);
  return out;
}

Bits Poset::minimal() const {
  Bits out = 0;
  for (int i = 0; i < size(); ++i)
    if (down_[i] == bit(i)) out |= bit(i);
  return out;
}

std::vector<std::pair<int, int>> Poset::covers() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i) {
    Bits above = strict_up(i);
    for_each_bit(above, [&](int j) {
      // j covers i iff nothing strictly between.
      if ((strict_up(i) & strict_down(j)) == 0) out.emplace_back(i, j);
    });
  }
  return out;
}

std::vector<int> Poset::heights() const {
  std::vector<int> h(size(), -1);
  std::function<int(int)> rec = [&](int i) {
    if (h[i] >= 0) return h[i];
    int best = 0;
    for_each_bit(strict_down(i), [&](int j) { best = std::max(best, rec(j) + 1); });
    return h[i] = best;
  };
  for (int i = 0; i < size(); ++i) rec(i);
  return h;
}

Poset Poset::induced(const std::vector<int>& points) const {
  const int m = static_cast<int>(points.size());
  std::vector<Bits> up(m, 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (leq(points[a], points[b])) up[a] |= bit(b);
  return from_up_sets(std::move(up));
}

Poset Poset::relabeled(const std::vector<int>& perm) const {
  std::vector<Bits> up(size(), 0);
  for (int i = 0; i < size(); ++i)
    for_each_bit(up_[i], [&](int j) { up[perm[i]] |= bit(perm[j]); });
  Poset p;
  p.down_ = downs_of(up);
  p.up_ = std::move(up);
  return p;
}

Poset Poset::reversed() const {
  Poset p;
  p.up_ = down_;
  p.down_ = up_;
  return p;
}

bool Poset::is_forest() const {
  for (int i = 0; i < size(); ++i) {
    Bits d = down_[i];
    bool is_chain = true;
    for_each_bit(d, [&](int a) {
      if ((d & ~(up_[a] | down_[a])) != 0) is_chain = false;
    });
    if (!is_chain) return false;
  }
  return true;
}

Poset mk_poset(int n, const std::vector<std::pair<int, int>>& covers) {
  check_size(n);
  std::vector<Bits> up(n);
  for (int i = 0; i < n; ++i) up[i] = bit(i);
  for (auto [a, b] : covers) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw BadElement("cover (" + std::to_string(a) + "," + std::to_string(b) +
                       ") references a point outside 0.." + std::to_string(n - 1));
    up[a] |= bit(b);
  }
  // Warshall on bit rows.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (has(up[i], k)) up[i] |= up[k];
  return Poset::from_up_sets(std::move(up));
}

Poset chain(int n) {
  std::vector<std::pair<int, int>> c;
  for (int i = 0; i + 1 < n; ++i) c.emplace_back(i, i + 1);
  return mk_poset(n, c);
}

Poset antichain(int n) { return mk_poset(n, {}); }

Poset disjoint_union(const Poset& a, const Poset& b) {
  const int n = a.size() + b.size();
  check_size(n);
  std::vector<Bits> up(n);
  for (int i = 0; i < a.size(); ++i) up[i] = a.up(i);
  for (int i = 0; i < b.size(); ++i) up[a.size() + i] = b.up(i) << a.size();
  return Poset::from_up_sets(std::move(up));
}

// --- p-morphisms -----------------------------------------------------------

Bits PMorphism::preimage(Bits t) const {
  Bits out = 0;
  for (int p = 0; p < source.size(); ++p)
    if (has(t, map[p])) out |= bit(p);
  return out;
}

Bits PMorphism::image(Bits s) const {
  Bits out = 0;
  for_each_bit(s, [&](int p) { out |= bit(map[p]); });
  return out;
}

bool PMorphism::injective() const {
  Bits seen = 0;
  for (int v : map) {
    if (has(seen, v)) return false;
    seen |= bit(v);
  }
  return true;
}

bool is_pmorphism(const std::vector<int>& f, const Poset& p, const Poset& q) {
  if (static_cast<int>(f.size()) != p.size()) return false;
  for (int v : f)
    if (v < 0 || v >= q.size()) return false;
  for (int u = 0; u < p.size(); ++u) {
    Bits img = 0;
    for_each_bit(p.up(u), [&](int w) { img |= bit(f[w]); });
    // Monotone gives img within up f(u); back condition gives equality.
    if (img != q.up(f[u])) return false;
  }
  return true;
}

PMorphism identity_pmorphism(const Poset& p) {
  std::vector<int> m(p.size());
  std::iota(m.begin(), m.end(), 0);
  return {p, p, std::move(m)};
}

PMorphism compose(const PMorphism& f, const PMorphism& g) {
  std::vector<int> m(f.source.size());
  for (int i = 0; i < f.source.size(); ++i) m[i] = g.map[f.map[i]];
  return {f.source, g.target, std::move(m)};
}

// --- up-sets ---------------------------------------------------------------

namespace {

void collect_upsets(const Poset& p, Bits in, Bits out, int start, std::vector<Bits>& acc,
                    std::size_t max_count) {
  const int n = p.size();
  int i = start;
  while (i < n && (has(in, i) || has(out, i))) ++i;
  if (i == n) {
    if (acc.size() >= max_count)
      throw SizeError("up-set count exceeds bound " + std::to_string(max_count));
    acc.push_back(in);
    return;
  }
  collect_upsets(p, in, out | p.down(i), i + 1, acc, max_count);
  collect_upsets(p, in | p.up(i), out, i + 1, acc, max_count);
}

struct UpsetCounter {
  const Poset& p;
  std::size_t cap;
  std::unordered_map<Bits, std::size_t> memo;

  static std::size_t sat_mul(std::size_t a, std::size_t b, std::size_t cap) {
    if (a == 0 || b == 0) return 0;
    if (a > cap / b) return cap;
    return std::min(a * b, cap);
  }

  // Up-sets of the sub-poset induced on `free` (points not yet decided).
  std::size_t count(Bits free) {
    if (free == 0) return 1;
    if (auto it = memo.find(free); it != memo.end()) return it->second;
    // Split off the connected component of the lowest free point.
    Bits comp = bit(lowest(free)), frontier = comp;
    while (frontier) {
      Bits next = 0;
      for_each_bit(frontier, [&](int i) { next |= (p.up(i) | p.down(i)) & free; });
      frontier = next & ~comp;
      comp |= next;
    }
    std::size_t result;
    if (comp != free) {
      result = sat_mul(count(comp), count(free & ~comp), cap);
    } else {
      int i = lowest(free);
      std::size_t with = count(free & ~p.up(i));
      std::size_t without = count(free & ~p.down(i));
      result = std::min(cap, with + without);
    }
    memo.emplace(free, result);
    return result;
  }
};

}  // namespace

std::vector<Bits> enumerate_upsets(const Poset& p, UpSetOptions opts) {
  std::vector<Bits> acc;
  collect_upsets(p, 0, 0, 0, acc, opts.max_count);
  std::sort(acc.begin(), acc.end(), [](Bits a, Bits b) {
    int ca = popcount(a), cb = popcount(b);
    return ca != cb ? ca < cb : a < b;
  });
  return acc;
}

std::size_t count_upsets(const Poset& p, std::size_t cap) {
  UpsetCounter c{p, cap, {}};
  return c.count(p.all());
}

// --- surgeries -------------------------------------------------------------

SplitResult split_point(const Poset& p, int w) {
  if (w < 0 || w >= p.size()) throw BadElement("split point " + std::to_string(w) + " not in poset");
  const int n = p.size();
  check_size(n + 1);
  std::vector<Bits> up(n + 1);
  for (int i = 0; i < n; ++i) {
    up[i] = p.up(i);
    if (has(up[i], w)) up[i] |= bit(n);
  }
  up[n] = p.strict_up(w) | bit(n);
  Poset q = Poset::from_up_sets(std::move(up));
  std::vector<int> m(n + 1);
  std::iota(m.begin(), m.begin() + n, 0);
  m[n] = w;
  return {q, PMorphism{q, p, std::move(m)}, w, n};
}

AdjoinResult adjoin_point(const Poset& p) {
  return {disjoint_union(p, antichain(1)), p.size()};
}

std::size_t fibered_product_size(const PMorphism& pi1, const PMorphism& pi2) {
  std::vector<std::size_t> c1(pi1.target.size(), 0), c2(pi2.target.size(), 0);
  for (int v : pi1.map) ++c1[v];
  for (int v : pi2.map) ++c2[v];
  std::size_t total = 0;
  for (std::size_t i = 0; i < c1.size() && i < c2.size(); ++i) total += c1[i] * c2[i];
  return total;
}

FiberedProduct fibered_product(const PMorphism& pi1, const PMorphism& pi2) {
  if (!(pi1.target == pi2.target)) throw TargetMismatch("p-morphisms have different targets");
  if (!is_pmorphism(pi1.map, pi1.source, pi1.target)) throw NotPMorphism("left leg is not a p-morphism");
  if (!is_pmorphism(pi2.map, pi2.source, pi2.target)) throw NotPMorphism("right leg is not a p-morphism");
  if (!pi1.surjective()) throw NotSurjective("left leg is not surjective");
  if (!pi2.surjective()) throw NotSurjective("right leg is not surjective");
  std::size_t sz = fibered_product_size(pi1, pi2);
  if (sz > static_cast<std::size_t>(kMaxPoints))
    throw SizeError("fibered product has " + std::to_string(sz) + " points");

  FiberedProduct fp;
  for (int a = 0; a < pi1.source.size(); ++a)
    for (int b = 0; b < pi2.source.size(); ++b)
      if (pi1.map[a] == pi2.map[b]) fp.pairs.emplace_back(a, b);
  const int n = static_cast<int>(fp.pairs.size());
  std::vector<Bits> up(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (pi1.source.leq(fp.pairs[i].first, fp.pairs[j].first) &&
          pi2.source.leq(fp.pairs[i].second, fp.pairs[j].second))
        up[i] |= bit(j);
  fp.poset = Poset::from_up_sets(std::move(up));
  std::vector<int> l(n), r(n);
  for (int i = 0; i < n; ++i) {
    l[i] = fp.pairs[i].first;
    r[i] = fp.pairs[i].second;
  }
  fp.left = {fp.poset, pi1.source, std::move(l)};
  fp.right = {fp.poset, pi2.source, std::move(r)};
  return fp;
}

// --- canonical form ----------------------------------------------------------

namespace {

using Partition = std::vector<std::vector<int>>;

class Canonizer {
 public:
  Canonizer(const Poset& p, const std::vector<std::uint64_t>& colors)
      : p_(p), colors_(colors.empty() ? std::vector<std::uint64_t>(p.size(), 0) : colors) {
    if (static_cast<int>(colors_.size()) != p.size()) throw BadElement("colour vector size mismatch");
  }

  Canonical run() {
    const int n = p_.size();
    Partition start;
    std::map<std::uint64_t, std::vector<int>> by_color;
    for (int i = 0; i < n; ++i) by_color[colors_[i]].push_back(i);
    for (auto& [c, cell] : by_color) start.push_back(cell);
    refine(start);
    std::vector<int> fixed;
    search(start, fixed);
    return {best_code_, best_order_};
  }

 private:
  void refine(Partition& part) const {
    const int n = p_.size();
    std::vector<int> cell_of(n);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int c = 0; c < static_cast<int>(part.size()); ++c)
        for (int v : part[c]) cell_of[v] = c;
      const int k = static_cast<int>(part.size());
      Partition next;
      next.reserve(n);
      for (auto& cell : part) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::vector<std::pair<std::vector<int>, int>> sig;
        sig.reserve(cell.size());
        for (int v : cell) {
          std::vector<int> s(2 * k, 0);
          for_each_bit(p_.strict_up(v), [&](int u) { ++s[cell_of[u]]; });
          for_each_bit(p_.strict_down(v), [&](int u) { ++s[k + cell_of[u]]; });
          sig.emplace_back(std::move(s), v);
        }
        std::sort(sig.begin(), sig.end());
        std::vector<int> cur{sig[0].second};
        for (std::size_t i = 1; i < sig.size(); ++i) {
          if (sig[i].first != sig[i - 1].first) {
            next.push_back(std::move(cur));
            cur.clear();
            changed = true;
          }
          cur.push_back(sig[i].second);
        }
        next.push_back(std::move(cur));
      }
      part = std::move(next);
    }
  }

  CanonCode encode(const std::vector<int>& order) const {
    const int n = p_.size();
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k) pos[order[k]] = k;
    CanonCode code;
    code.reserve(1 + 16 * n);
    code.push_back(static_cast<char>(n));
    auto put64 = [&](std::uint64_t x) {
      for (int b = 7; b >= 0; --b) code.push_back(static_cast<char>((x >> (8 * b)) & 0xFF));
    };
    for (int k = 0; k < n; ++k) put64(colors_[order[k]]);
    for (int k = 0; k < n; ++k) {
      Bits row = 0;
      for_each_bit(p_.up(order[k]), [&](int j) { row |= bit(pos[j]); });
      put64(row);
    }
    return code;
  }

  bool twins(int u, int v) const {
    if (colors_[u] != colors_[v] || p_.leq(u, v) || p_.leq(v, u)) return false;
    return (p_.strict_up(u) & ~bit(v)) == (p_.strict_up(v) & ~bit(u)) &&
           (p_.strict_down(u) & ~bit(v)) == (p_.strict_down(v) & ~bit(u));
  }

  void search(const Partition& part, std::vector<int>& fixed) {
    int target = -1;
    for (int c = 0; c < static_cast<int>(part.size()); ++c)
      if (part[c].size() > 1 && (target < 0 || part[c].size() < part[target].size())) target = c;
    if (target < 0) {
      std::vector<int> order;
      order.reserve(p_.size());
      for (auto& cell : part) order.push_back(cell[0]);
      CanonCode code = encode(order);
      if (best_order_.empty() || code < best_code_) {
        best_code_ = std::move(code);
        best_order_ = std::move(order);
      } else if (code == best_code_) {
        // Two leaves with equal codes differ by an automorphism.
        std::vector<int> gamma(p_.size());
        for (int k = 0; k < p_.size(); ++k) gamma[best_order_[k]] = order[k];
        autos_.push_back(std::move(gamma));
      }
      return;
    }
    const std::vector<int>& cell = part[target];
    std::vector<int> tried;
    for (int v : cell) {
      bool skip = false;
      for (int t : tried)
        if (twins(t, v) || same_orbit(t, v, fixed)) {
          skip = true;
          break;
        }
      if (skip) continue;
      tried.push_back(v);
      Partition child;
      child.reserve(part.size() + 1);
      for (int c = 0; c < static_cast<int>(part.size()); ++c) {
        if (c != target) {
          child.push_back(part[c]);
          continue;
        }
        child.push_back({v});
        std::vector<int> rest;
        for (int u : cell)
          if (u != v) rest.push_back(u);
        child.push_back(std::move(rest));
      }
      refine(child);
      fixed.push_back(v);
      search(child, fixed);
      fixed.pop_back();
    }
  }

  // Orbit test under the stored automorphisms that fix `fixed` pointwise.
  bool same_orbit(int a, int b, const std::vector<int>& fixed) const {
    if (autos_.empty()) return false;
    std::vector<int> parent(p_.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    bool any = false;
    for (const auto& g : autos_) {
      bool fixes = std::all_of(fixed.begin(), fixed.end(), [&](int f) { return g[f] == f; });
      if (!fixes) continue;
      any = true;
      for (int i = 0; i < p_.size(); ++i) parent[find(i)] = find(g[i]);
    }
    return any && find(a) == find(b);
  }

  const Poset& p_;
  std::vector<std::uint64_t> colors_;
  CanonCode best_code_;
  std::vector<int> best_order_;
  std::vector<std::vector<int>> autos_;
};

}  // namespace

Canonical canonical_labeling(const Poset& p, const std::vector<std::uint64_t>& colors) {
  if (p.size() == 0) return {std::string(1, '\0'), {}};
  return Canonizer(p, colors).run();
}

CanonCode canonical_form(const Poset& p, const std::vector<std::uint64_t>& colors) {
  return canonical_labeling(p, colors).code;
}

std::optional<std::vector<int>> find_isomorphism(const Poset& a, const Poset& b,
                                                 const std::vector<std::uint64_t>& ca,
                                                 const std::vector<std::uint64_t>& cb) {
  if (a.size() != b.size()) return std::nullopt;
  Canonical la = canonical_labeling(a, ca), lb = canonical_labeling(b, cb);
  if (la.code != lb.code) return std::nullopt;
  std::vector<int> iso(a.size());
  for (int k = 0; k < a.size(); ++k) iso[la.order[k]] = lb.order[k];
  return iso;
}

// --- linear extensions -----------------------------------------------------

namespace {

void check_acyclic(int n, const std::vector<Bits>& before) {
  std::vector<int> indeg(n, 0);
  for (int i = 0; i < n; ++i) for_each_bit(before[i], [&](int j) { ++indeg[j]; });
  std::vector<int> stack;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) stack.push_back(i);
  int seen = 0;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    ++seen;
    for_each_bit(before[i], [&](int j) {
      if (--indeg[j] == 0) stack.push_back(j);
    });
  }
  if (seen != n) throw CycleError("precedence relation contains a cycle");
}

}  // namespace

void for_each_linear_extension(int n, const std::vector<Bits>& before,
                               const std::function<bool(const std::vector<int>&)>& visit) {
  check_acyclic(n, before);
  std::vector<Bits> preds(n, 0);
  for (int i = 0; i < n; ++i) for_each_bit(before[i], [&](int j) { preds[j] |= bit(i); });
  std::vector<int> order;
  order.reserve(n);
  bool stop = false;
  std::function<void(Bits)> rec = [&](Bits placed) {
    if (stop) return;
    if (static_cast<int>(order.size()) == n) {
      if (!visit(order)) stop = true;
      return;
    }
    for (int i = 0; i < n && !stop; ++i) {
      if (has(placed, i) || (preds[i] & ~placed)) continue;
      order.push_back(i);
      rec(placed | bit(i));
      order.pop_back();
    }
  };
  rec(0);
}

std::vector<std::vector<int>> linear_extensions(const Poset& p) {
  std::vector<Bits> before(p.size());
  for (int i = 0; i < p.size(); ++i) before[i] = p.strict_up(i);
  std::vector<std::vector<int>> out;
  for_each_linear_extension(p.size(), before, [&](const std::vector<int>& o) {
    out.push_back(o);
    return true;
  });
  return out;
}

std::vector<int> first_linear_extension(int n, const std::vector<Bits>& before) {
  std::vector<int> out;
  for_each_linear_extension(n, before, [&](const std::vector<int>& o) {
    out = o;
    return false;
  });
  return out;
}

std::vector<std::vector<int>> automorphisms(const Poset& p) {
  const int n = p.size();
  std::vector<std::vector<int>> out;
  std::vector<int> img(n, -1);
  Bits used = 0;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(img);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (has(used, v)) continue;
      if (popcount(p.up(v)) != popcount(p.up(i)) || popcount(p.down(v)) != popcount(p.down(i))) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        ok = p.leq(i, j) == p.leq(v, img[j]) && p.leq(j, i) == p.leq(img[j], v);
      if (!ok) continue;
      img[i] = v;
      used |= bit(v);
      rec(i + 1);
      used &= ~bit(v);
    }
    img[i] = -1;
  };
  rec(0);
  return out;
}

std::string to_dot(const Poset& p, const std::string& name, const std::vector<std::string>& labels) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (int i = 0; i < p.size(); ++i) {
    os << "  " << i;
    if (i < static_cast<int>(labels.size())) os << " [label=\"" << labels[i] << "\"]";
    os << ";\n";
  }
  std::map<int, std::vector<int>> ranks;
  auto h = p.heights();
  for (int i = 0; i < p.size(); ++i) ranks[h[i]].push_back(i);
  for (auto& [r, pts] : ranks) {
    os << "  { rank=same;";
    for (int i : pts) os << ' ' << i << ';';
    os << " }\n";
  }
  for (auto [a, b] : p.covers()) os << "  " << a << " -> " << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace heytica

// Brute-force reference computations. Nothing here calls into the
// refinement/search code paths it is used to check.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "heytica/heyting.hpp"
#include "heytica/poset.hpp"

namespace oracle {

using heytica::Bits;
using heytica::Poset;

/// Every partial order on n labelled points (n <= 5), from raw relations.
inline std::vector<Poset> all_labeled_posets(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  std::vector<Poset> out;
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Bits> up(n);
    for (int i = 0; i < n; ++i) up[i] = heytica::bit(i);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if ((mask >> k) & 1U) up[pairs[k].first] |= heytica::bit(pairs[k].second);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (i != j && heytica::has(up[i], j) && heytica::has(up[j], i)) ok = false;
        if (heytica::has(up[i], j) && (up[j] & ~up[i])) ok = false;
      }
    if (ok) out.push_back(Poset::from_up_sets(up));
  }
  return out;
}

/// Relation matrix under a relabelling, as a string.
inline std::string encode(const Poset& p, const std::vector<int>& perm) {
  const int n = p.size();
  std::string s(n * n, '0');
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.leq(i, j)) s[perm[i] * n + perm[j]] = '1';
  return std::to_string(n) + ":" + s;
}

/// Least encoding over all n! relabellings.
inline std::string brute_code(const Poset& p) {
  std::vector<int> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string c = encode(p, perm);
    if (best.empty() || c < best) best = c;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline bool brute_isomorphic(const Poset& a, const Poset& b) {
  return a.size() == b.size() && brute_code(a) == brute_code(b);
}

/// Number of isomorphism classes of posets on n points.
inline std::size_t brute_class_count(int n) {
  std::set<std::string> codes;
  for (const auto& p : all_labeled_posets(n)) codes.insert(brute_code(p));
  return codes.size();
}

/// One representative per isomorphism class.
inline std::vector<Poset> brute_representatives(int n) {
  std::set<std::string> codes;
  std::vector<Poset> out;
  for (const auto& p : all_labeled_posets(n))
    if (codes.insert(brute_code(p)).second) out.push_back(p);
  return out;
}

inline std::vector<Bits> brute_upsets(const Poset& p) {
  std::vector<Bits> out;
  for (Bits s = 0; s <= p.all(); ++s) {
    bool closed = true;
    for (int i = 0; i < p.size() && closed; ++i)
      if (heytica::has(s, i) && (p.up(i) & ~s)) closed = false;
    if (closed) out.push_back(s);
  }
  return out;
}

/// All maps P -> Q satisfying the literal p-morphism condition:
/// monotone and for all u, v >= f(u) there is w >= u with f(w) = v.
inline std::vector<std::vector<int>> brute_pmorphisms(const Poset& p, const Poset& q) {
  std::vector<std::vector<int>> out;
  std::vector<int> f(p.size(), 0);
  while (true) {
    bool ok = true;
    for (int u = 0; u < p.size() && ok; ++u)
      for (int w = 0; w < p.size() && ok; ++w)
        if (p.leq(u, w) && !q.leq(f[u], f[w])) ok = false;
    for (int u = 0; u < p.size() && ok; ++u)
      for (int v = 0; v < q.size() && ok; ++v) {
        if (!q.leq(f[u], v)) continue;
        bool found = false;
        for (int w = 0; w < p.size() && !found; ++w) found = p.leq(u, w) && f[w] == v;
        ok = found;
      }
    if (ok) out.push_back(f);
    int k = 0;
    while (k < p.size() && ++f[k] == q.size()) f[k++] = 0;
    if (k == p.size()) break;
  }
  return out;
}

/// Heyting embeddings found by direct search over element maps: injective,
/// preserving 0, 1, meet, join and implication.
inline std::size_t brute_embedding_count(const heytica::HAlg& a, const heytica::HAlg& b) {
  const auto& ea = a.elements();
  const auto& eb = b.elements();
  std::vector<int> img(ea.size(), -1);
  std::size_t count = 0;
  auto consistent = [&](std::size_t upto) {
    for (std::size_t i = 0; i <= upto; ++i)
      for (std::size_t j = 0; j <= upto; ++j) {
        Bits x = ea[i], y = ea[j];
        Bits fx = eb[img[i]], fy = eb[img[j]];
        auto check = [&](Bits r, Bits fr) {
          int k = a.index_of(r);
          return img[k] < 0 || eb[img[k]] == fr;
        };
        if (!check(x & y, fx & fy) || !check(x | y, fx | fy) ||
            !check(a.implies(x, y), b.implies(fx, fy)))
          return false;
        if (i != j && img[i] == img[j]) return false;
      }
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == ea.size()) {
      ++count;
      return;
    }
    for (std::size_t v = 0; v < eb.size(); ++v) {
      if (ea[i] == a.bottom() && eb[v] != b.bottom()) continue;
      if (ea[i] == a.top() && eb[v] != b.top()) continue;
      img[i] = static_cast<int>(v);
      if (consistent(i)) rec(i + 1);
      img[i] = -1;
    }
  };
  rec(0);
  return count;
}

/// Largest element w with w & u <= v, found by scanning.
inline Bits scan_implies(const heytica::HAlg& h, Bits u, Bits v) {
  Bits best = 0;
  for (Bits w : h.elements())
    if (((w & u) & ~v) == 0) best |= w;
  return best;
}

}  // namespace oracle

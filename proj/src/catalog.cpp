#include "heytica/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace heytica {

namespace {

/// p plus a new maximal point whose strict down-set is `d`.
Poset add_maximal(const Poset& p, Bits d) {
  const int n = p.size();
  std::vector<Bits> up(n + 1);
  for (int i = 0; i < n; ++i) up[i] = p.up(i) | (has(d, i) ? bit(n) : 0);
  up[n] = bit(n);
  return Poset::from_up_sets(std::move(up));
}

std::vector<Bits> down_sets(const Poset& p) {
  std::vector<Bits> out;
  for (Bits u : enumerate_upsets(p)) out.push_back(p.all() & ~u);
  return out;
}

/// Children of every parent, deduplicated by canonical code; the first
/// occurrence in (parent, down-set) order wins, so the result does not
/// depend on scheduling.
std::vector<std::pair<CanonCode, Poset>> extend_level(const std::vector<Poset>& parents, Exec exec,
                                                     const std::function<bool(const Poset&)>& keep) {
  std::vector<std::pair<int, Bits>> jobs;
  for (int i = 0; i < static_cast<int>(parents.size()); ++i)
    for (Bits d : down_sets(parents[i])) jobs.emplace_back(i, d);
  std::vector<CanonCode> codes(jobs.size());
  std::vector<Poset> kids(jobs.size());
  std::vector<char> kept(jobs.size(), 0);
  const long m = static_cast<long>(jobs.size());
  auto work = [&](long k) {
    Poset c = add_maximal(parents[jobs[k].first], jobs[k].second);
    if (!keep(c)) return;
    Canonical can = canonical_labeling(c);
    std::vector<int> perm(c.size());
    for (int pos = 0; pos < c.size(); ++pos) perm[can.order[pos]] = pos;
    kids[k] = c.relabeled(perm);
    codes[k] = std::move(can.code);
    kept[k] = 1;
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long k = 0; k < m; ++k) work(k);
  } else {
    for (long k = 0; k < m; ++k) work(k);
  }
  std::map<CanonCode, Poset> seen;
  for (long k = 0; k < m; ++k)
    if (kept[k]) seen.emplace(std::move(codes[k]), std::move(kids[k]));
  return {std::make_move_iterator(seen.begin()), std::make_move_iterator(seen.end())};
}

}  // namespace

Poset canonical_representative(const Poset& p) {
  Canonical can = canonical_labeling(p);
  std::vector<int> perm(p.size());
  for (int pos = 0; pos < p.size(); ++pos) perm[can.order[pos]] = pos;
  return p.relabeled(perm);
}

std::vector<Poset> enumerate_posets(int n, Exec exec) {
  if (n < 1 || n > 7) throw SizeError("enumerate_posets supports 1..7 points");
  std::vector<Poset> level{chain(1)};
  for (int k = 1; k < n; ++k) {
    auto next = extend_level(level, exec, [](const Poset&) { return true; });
    level.clear();
    for (auto& [code, p] : next) level.push_back(std::move(p));
  }
  return level;
}

std::vector<Poset> posets_by_algebra_size(std::size_t max_elements, int max_points) {
  std::vector<Poset> out;
  if (max_elements < 2 || max_points < 1) return out;
  std::vector<Poset> level{chain(1)};
  auto small = [&](const Poset& p) { return count_upsets(p, max_elements + 1) <= max_elements; };
  for (int k = 1; !level.empty(); ++k) {
    out.insert(out.end(), level.begin(), level.end());
    if (k == max_points) break;
    // Adding a point strictly increases the up-set count, so pruning is safe.
    auto next = extend_level(level, Exec::Serial, small);
    level.clear();
    for (auto& [code, p] : next) level.push_back(std::move(p));
  }
  return out;
}

void for_each_pmorphism(const Poset& src, const Poset& tgt, bool surjective_only,
                        const std::function<bool(const std::vector<int>&)>& visit) {
  for_each_pmorphism(src, tgt, surjective_only, std::vector<Bits>(src.size(), tgt.all()), visit);
}

void for_each_pmorphism(const Poset& src, const Poset& tgt, bool surjective_only,
                        const std::vector<Bits>& allowed,
                        const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = src.size();
  const int m = tgt.size();
  if (n == 0 || m == 0) return;
  // Assign greatest points first so every strict up-set is known.
  std::vector<int> order = first_linear_extension(n, [&] {
    std::vector<Bits> before(n);
    for (int i = 0; i < n; ++i) before[i] = src.strict_up(i);
    return before;
  }());
  std::reverse(order.begin(), order.end());
  std::vector<int> f(n, -1);
  bool stop = false;
  std::function<void(int, Bits)> rec = [&](int k, Bits covered) {
    if (stop) return;
    if (surjective_only && popcount(tgt.all() & ~covered) > n - k) return;
    if (k == n) {
      if (!surjective_only || covered == tgt.all()) stop = !visit(f);
      return;
    }
    const int u = order[k];
    Bits img = 0;
    for_each_bit(src.strict_up(u), [&](int w) { img |= bit(f[w]); });
    for (int v = 0; v < m && !stop; ++v) {
      if (!has(allowed[u], v)) continue;
      const Bits up = tgt.up(v);
      if ((img & ~up) != 0) continue;
      if ((up & ~bit(v) & ~img) != 0) continue;
      f[u] = v;
      rec(k + 1, covered | bit(v));
    }
    f[u] = -1;
  };
  rec(0, 0);
}

std::vector<std::vector<int>> surjective_pmorphisms(const Poset& src, const Poset& tgt) {
  std::vector<std::vector<int>> out;
  for_each_pmorphism(src, tgt, true, [&](const std::vector<int>& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::vector<Hom> embeddings_between(const HAlg& a, const HAlg& b) {
  std::vector<Hom> out;
  for (auto& f : surjective_pmorphisms(b.dual(), a.dual()))
    out.push_back(Hom{a, b, PMorphism{b.dual(), a.dual(), f}});
  return out;
}

std::size_t count_embeddings_by_elements(const HAlg& a, const HAlg& b) {
  const auto& ea = a.elements();
  const auto& eb = b.elements();
  const std::size_t n = ea.size();
  std::vector<int> img(n, -1);
  std::vector<char> used(eb.size(), 0);
  std::size_t count = 0;
  auto ok_upto = [&](std::size_t i) {
    // A result may be assigned after its operands, so recheck every pair.
    for (std::size_t p = 0; p <= i; ++p)
      for (std::size_t j = 0; j <= i; ++j) {
        const Bits x = ea[p], y = ea[j];
        const Bits fx = eb[img[p]], fy = eb[img[j]];
        const std::pair<Bits, Bits> pairs[] = {{x & y, fx & fy},
                                               {x | y, fx | fy},
                                               {a.implies(x, y), b.implies(fx, fy)},
                                               {a.implies(y, x), b.implies(fy, fx)}};
        for (auto [r, fr] : pairs) {
          const int k = a.index_of(r);
          if (img[k] >= 0 && eb[img[k]] != fr) return false;
        }
      }
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      ++count;
      return;
    }
    for (std::size_t v = 0; v < eb.size(); ++v) {
      if (used[v]) continue;
      if (ea[i] == a.bottom() && eb[v] != b.bottom()) continue;
      if (ea[i] == a.top() && eb[v] != b.top()) continue;
      img[i] = static_cast<int>(v);
      used[v] = 1;
      if (ok_upto(i)) rec(i + 1);
      used[v] = 0;
      img[i] = -1;
    }
  };
  rec(0);
  return count;
}

std::vector<std::size_t> Catalog::counts() const {
  std::vector<std::size_t> out;
  for (int n = 1; n <= max_size(); ++n) out.push_back(by_size[n].size());
  return out;
}

std::map<CanonCode, std::pair<int, int>> Catalog::index() const {
  std::map<CanonCode, std::pair<int, int>> out;
  for (int n = 1; n <= max_size(); ++n)
    for (int i = 0; i < static_cast<int>(by_size[n].size()); ++i)
      out.emplace(canonical_form(by_size[n][i]), std::make_pair(n, i));
  return out;
}

Catalog build_catalog(int max_n, Exec exec) {
  if (max_n < 1 || max_n > 7) throw SizeError("catalog supports 1..7 points");
  Catalog c;
  c.by_size.resize(max_n + 1);
  c.by_size[1] = {chain(1)};
  for (int k = 1; k < max_n; ++k)
    for (auto& [code, p] : extend_level(c.by_size[k], exec, [](const Poset&) { return true; }))
      c.by_size[k + 1].push_back(std::move(p));
  return c;
}

std::string catalog_to_string(const Catalog& c) {
  std::string out;
  for (int n = 1; n <= c.max_size(); ++n)
    for (const auto& p : c.by_size[n]) {
      out += std::to_string(n) + ";";
      bool first = true;
      for (auto [i, j] : p.covers()) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(i) + "-" + std::to_string(j);
      }
      out += '\n';
    }
  return out;
}

Catalog catalog_from_string(const std::string& text) {
  Catalog c;
  c.by_size.resize(1);
  std::size_t pos = 0;
  int line_no = 0;
  auto bad = [&](const std::string& why) {
    throw FormatError("catalog line " + std::to_string(line_no) + ": " + why);
  };
  auto parse_int = [&](const std::string& s) {
    if (s.empty() || s.size() > 3 || !std::all_of(s.begin(), s.end(), ::isdigit)) bad("bad number '" + s + "'");
    return std::stoi(s);
  };
  while (pos < text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) bad("missing line terminator");
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    std::size_t semi = line.find(';');
    if (semi == std::string::npos) bad("missing ';'");
    const int n = parse_int(line.substr(0, semi));
    if (n < 1 || n > kMaxPoints) bad("size out of range");
    std::vector<std::pair<int, int>> covers;
    std::string rest = line.substr(semi + 1);
    std::stringstream ss(rest);
    std::string item;
    while (!rest.empty() && std::getline(ss, item, ',')) {
      std::size_t dash = item.find('-');
      if (dash == std::string::npos) bad("cover without '-'");
      covers.emplace_back(parse_int(item.substr(0, dash)), parse_int(item.substr(dash + 1)));
    }
    if (!rest.empty() && rest.back() == ',') bad("trailing ','");
    Poset p;
    try {
      p = mk_poset(n, covers);
    } catch (const Error& e) {
      bad(e.what());
    }
    if (p.covers() != covers) bad("cover list is not the sorted Hasse diagram");
    if (n < c.max_size()) bad("sizes out of order");
    while (c.max_size() < n) c.by_size.emplace_back();
    c.by_size[n].push_back(std::move(p));
  }
  return c;
}

void save_catalog(const Catalog& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write " + path);
  out << catalog_to_string(c);
  if (!out) throw IOError("write failed for " + path);
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return catalog_from_string(ss.str());
}

}  // namespace heytica

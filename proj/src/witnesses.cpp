#include "heytica/witnesses.hpp"

#include <algorithm>
#include <set>

#include "heytica/catalog.hpp"

namespace heytica {

bool WitnessReport::ok() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.second; });
}

namespace {

CanonCode marked_code(const Poset& p, const std::vector<Bits>& marks) {
  std::vector<std::uint64_t> colors(p.size(), 0);
  for (int i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < marks.size(); ++j)
      if (has(marks[j], i)) colors[i] |= std::uint64_t{1} << j;
  return canonical_form(p, colors);
}

// K_j is a quotient of H_i with x_i -> x_j: some up-set of dual H_i,
// with x_i cut down to it, is isomorphic to dual K_j with x_j.
bool quotient_of(const OneGenerated& big, const OneGenerated& small) {
  if (small.algebra.points() > big.algebra.points()) return false;
  for (Bits u : enumerate_upsets(big.algebra.dual())) {
    if (popcount(u) != small.algebra.points()) continue;
    const std::vector<int> pts = members(u);
    Bits x = 0;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (has(big.x, pts[k])) x |= bit(static_cast<int>(k));
    if (marked_code(big.algebra.dual().induced(pts), {x}) == small.code) return true;
  }
  return false;
}

// For each member, the shallowest term t(x) true there such that every
// member where t holds is a quotient of it: the member is L_t among the
// family at this bound.
std::vector<std::string> term_labels(const std::vector<OneGenerated>& fam, int max_depth) {
  const std::size_t m = fam.size();
  using Sig = std::vector<Bits>;
  std::vector<Sig> sigs;
  std::vector<TermPtr> terms;
  std::map<Sig, std::size_t> seen;
  auto add = [&](Sig s, TermPtr t) {
    if (seen.emplace(s, sigs.size()).second) {
      sigs.push_back(std::move(s));
      terms.push_back(std::move(t));
    }
  };
  Sig zero(m, 0), one(m), gen(m);
  for (std::size_t i = 0; i < m; ++i) {
    one[i] = fam[i].algebra.top();
    gen[i] = fam[i].x;
  }
  add(zero, Term::zero());
  add(one, Term::one());
  add(gen, Term::x());
  for (int d = 1; d <= max_depth; ++d) {
    const std::size_t n = sigs.size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Sig meet(m), join(m), imp(m);
        for (std::size_t i = 0; i < m; ++i) {
          meet[i] = sigs[a][i] & sigs[b][i];
          join[i] = sigs[a][i] | sigs[b][i];
          imp[i] = fam[i].algebra.implies(sigs[a][i], sigs[b][i]);
        }
        if (b <= a) add(std::move(meet), Term::make(Term::Op::And, terms[a], terms[b]));
        if (b <= a) add(std::move(join), Term::make(Term::Op::Or, terms[a], terms[b]));
        add(std::move(imp), Term::make(Term::Op::Imp, terms[a], terms[b]));
      }
  }
  std::vector<std::vector<bool>> quot(m, std::vector<bool>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) quot[i][j] = i == j || quotient_of(fam[i], fam[j]);
  std::vector<std::string> out(m, "unlabelled");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < sigs.size(); ++t) {
      if (sigs[t][i] != fam[i].algebra.top()) continue;
      bool fits = true;
      for (std::size_t j = 0; j < m && fits; ++j)
        if (sigs[t][j] == fam[j].algebra.top() && !quot[i][j]) fits = false;
      if (fits) {
        out[i] = to_string(terms[t]);
        break;
      }
    }
  return out;
}

// All terms in x of depth at most d.
std::vector<TermPtr> all_terms(int d) {
  std::vector<TermPtr> ts{Term::zero(), Term::one(), Term::x()};
  for (int k = 1; k <= d; ++k) {
    std::vector<TermPtr> next = {Term::zero(), Term::one(), Term::x()};
    for (const auto& a : ts)
      for (const auto& b : ts)
        for (auto op : {Term::Op::And, Term::Op::Or, Term::Op::Imp}) next.push_back(Term::make(op, a, b));
    ts = std::move(next);
  }
  return ts;
}

Bits lift_through(const Chain& c, int from, Bits x) { return from == c.top_index() ? x : c.embed(from, c.top_index())(x); }

}  // namespace

bool join_prime_in(const HAlg& h, Bits a, const std::vector<Bits>& gens) {
  const auto el = generated_elements(h, gens);
  if (a == 0 || std::find(el.begin(), el.end(), a) == el.end()) return false;
  for (Bits b : el)
    for (Bits c : el)
      if (h.leq(a, b | c) && !h.leq(a, b) && !h.leq(a, c)) return false;
  return true;
}

std::vector<OneGenerated> one_generated_family(int max_dual) {
  std::vector<OneGenerated> out;
  for (int n = 2; n <= max_dual; ++n)
    for (const Poset& p : enumerate_posets(n)) {
      HAlg h(p);
      for (Bits x : h.elements()) {
        if (x == 0 || x == h.top()) continue;
        if (generated_elements(h, {x}).size() != h.size()) continue;
        out.push_back({h, x, marked_code(p, {x})});
        break;
      }
    }
  return out;
}

WitnessReport roelcke_family(int n) {
  if (n < 1) throw BadElement("family size must be positive");
  std::vector<OneGenerated> fam;
  for (int bound = 5; bound <= 7; ++bound) {
    fam = one_generated_family(bound);
    if (static_cast<int>(fam.size()) >= n) break;
  }
  if (static_cast<int>(fam.size()) < n)
    throw InsufficientFamily("only " + std::to_string(fam.size()) + " one-generated algebras up to dual size 7");

  WitnessReport r;
  bool generated = true, x_chain = true, zero_chain = true, transform = true;
  const auto terms = all_terms(2);
  for (int i = 0; i < n; ++i) {
    const OneGenerated& g = fam[i];
    StarAlgebra s = add_bottom(g.algebra);
    const Bits xs = s.embed(g.x), z = s.old_bottom();
    const HAlg& h = s.algebra;
    generated = generated && generated_elements(h, {xs, z}).size() == h.size();
    x_chain = x_chain && generated_elements(h, {xs}).size() == 3;
    zero_chain = zero_chain && generated_elements(h, {z}).size() == 3;
    for (const auto& t : terms) {
      const Bits plain = eval_term(t, g.algebra, {g.x, std::nullopt});
      if (eval_term(star_term(t), h, {xs, z}) != s.embed(plain)) transform = false;
    }
    r.stages.push_back({"star" + std::to_string(i), h, {xs, z}, marked_code(h.dual(), {xs, z})});
  }
  std::set<CanonCode> codes;
  for (const auto& st : r.stages) codes.insert(st.code);
  r.verdicts["generated_by_x_and_old_zero"] = generated;
  r.verdicts["x_generates_3_chain"] = x_chain;
  r.verdicts["old_zero_generates_3_chain"] = zero_chain;
  r.verdicts["pairwise_non_isomorphic"] = codes.size() == r.stages.size();
  r.verdicts["term_transform"] = transform;
  auto labels = term_labels(fam, 4);
  r.labels.assign(labels.begin(), labels.begin() + n);
  return r;
}

WitnessReport infinite_orbit_witness(Chain& c, const std::vector<Bits>& s_in, int k) {
  if (k < 0) throw BadElement("orbit length must be non-negative");
  for (Bits x : s_in)
    if (!c.top().contains(x)) throw BadElement("S is not inside the top level");
  int at = c.top_index();  // level where s, as and e_s live
  std::vector<Bits> s = s_in, as;
  // Every a_i sits over the first maximal dual point of <S>, so the a_i
  // share their type over S. e_s: host points over that point.
  Represented rs = generated_subalgebra(c.top(), s);
  Bits e_s = rs.primes.at(members(rs.algebra.dual().maximal()).front());
  auto refresh = [&] {
    if (at == c.top_index()) return;
    for (Bits& x : s) x = lift_through(c, at, x);
    for (Bits& x : as) x = lift_through(c, at, x);
    e_s = lift_through(c, at, e_s);
    at = c.top_index();
  };
  auto with = [](std::vector<Bits> v, const std::vector<Bits>& w) {
    v.insert(v.end(), w.begin(), w.end());
    return v;
  };

  for (int i = 0; i <= k; ++i) {
    const HAlg h = c.top();
    Represented r = generated_subalgebra(h, with(s, as));
    const Poset& rd = r.algebra.dual();
    int q = -1;
    for (int p : members(e_s)) {
      const int cand = r.inclusion.dual.map[p];
      if (has(rd.maximal(), cand) && (q < 0 || cand < q)) q = cand;
    }
    if (q < 0) throw ConstructionError("no maximal point over the chosen point of <S>");
    AdjoinResult b = adjoin_point(rd);
    std::vector<int> map(b.poset.size());
    for (int p = 0; p < rd.size(); ++p) map[p] = p;
    map[b.fresh] = q;
    HAlg bh(b.poset);
    Hom pair{r.algebra, bh, PMorphism{b.poset, rd, map}};
    ExtensionTask task{pair, r.inclusion};
    std::optional<Hom> g = find_compatible(h, task);
    if (!g) {
      g = realize(c, task);
      refresh();
    }
    as.push_back((*g)(bit(b.fresh)));
  }

  WitnessReport rep;
  const HAlg& top = c.top();
  bool fresh = true, prime = true;
  std::set<CanonCode> types;
  for (int i = 0; i <= k; ++i) {
    std::vector<Bits> before(as.begin(), as.begin() + i);
    const auto prev = generated_elements(top, with(s, before));
    if (std::find(prev.begin(), prev.end(), as[i]) != prev.end()) fresh = false;
    std::vector<Bits> upto(as.begin(), as.begin() + i + 1);
    if (!join_prime_in(top, as[i], with(s, upto))) prime = false;
    Represented ri = generated_subalgebra(top, with(s, upto));
    std::vector<Bits> gens;
    for (Bits x : with(s, upto)) gens.push_back(ri.inclusion.dual.image(x));
    rep.stages.push_back({"a" + std::to_string(i), ri.algebra, gens, marked_code(ri.algebra.dual(), gens)});
    Represented one = generated_subalgebra(top, with(s, {as[i]}));
    std::vector<Bits> marks;
    for (Bits x : with(s, {as[i]})) marks.push_back(one.inclusion.dual.image(x));
    types.insert(marked_code(one.algebra.dual(), marks));
  }
  std::set<Bits> distinct(as.begin(), as.end());

  // a_i -> a_(i+1) fixing S, then one more back-and-forth step.
  bool isos = true;
  for (int i = 0; i < k && isos; ++i) {
    refresh();
    PartialIso p{with(s, {as[i]}), with(s, {as[i + 1]})};
    try {
      close_partial_iso(c.top(), p);
      PartialIso ext = extend_partial_iso(c, p, as[i + 1]);
      const auto graph = close_partial_iso(c.top(), ext);
      refresh();
      auto maps = [&](Bits x, Bits y) {
        return std::binary_search(graph.begin(), graph.end(), std::make_pair(x, y));
      };
      for (Bits x : s) isos = isos && maps(x, x);
      isos = isos && maps(as[i], as[i + 1]);
    } catch (const ConstructionError&) {
      isos = false;
    }
  }
  rep.verdicts["fresh"] = fresh;
  rep.verdicts["join_prime"] = prime;
  rep.verdicts["pairwise_distinct"] = distinct.size() == as.size();
  rep.verdicts["same_type_over_s"] = types.size() == 1;
  rep.verdicts["partial_isos_fix_s"] = isos;
  return rep;
}

}  // namespace heytica

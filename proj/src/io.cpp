#include "heytica/io.hpp"

#include <fstream>
#include <sstream>

namespace heytica {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(as_int(v, what));
  return out;
}

std::vector<std::vector<int>> table(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of rows");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) out.push_back(int_list(row, what));
  return out;
}

PMorphism pmorphism(const Poset& src, const Poset& tgt, const json& j, const char* what) {
  std::vector<int> map = int_list(j, what);
  if (static_cast<int>(map.size()) != src.size())
    throw FormatError(std::string(what) + " has " + std::to_string(map.size()) + " entries, expected " +
                      std::to_string(src.size()));
  for (int v : map)
    if (v < 0 || v >= tgt.size()) throw FormatError(std::string(what) + " points outside its target");
  if (!is_pmorphism(map, src, tgt)) throw NotPMorphism(std::string(what) + " is not a p-morphism");
  return {src, tgt, std::move(map)};
}

}  // namespace

json to_json(const Poset& p) {
  json cov = json::array();
  for (auto [i, j] : p.covers()) cov.push_back({i, j});
  return {{"n", p.size()}, {"covers", cov}};
}

Poset poset_from_json(const json& j) {
  const int n = as_int(field(j, "n"), "n");
  if (n < 1 || n > kMaxPoints) throw FormatError("n must be between 1 and 64");
  const json& cov = field(j, "covers");
  if (!cov.is_array()) throw FormatError("covers must be an array");
  std::vector<std::pair<int, int>> pairs;
  for (const auto& c : cov) {
    auto v = int_list(c, "cover");
    if (v.size() != 2) throw FormatError("each cover is a pair [i, j]");
    if (v[0] < 0 || v[0] >= n || v[1] < 0 || v[1] >= n) throw FormatError("cover index out of range");
    pairs.emplace_back(v[0], v[1]);
  }
  return mk_poset(n, pairs);
}

json to_json(const HAlg& h, const std::vector<std::string>& labels) {
  json j{{"dual", to_json(h.dual())}};
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

HAlg algebra_from_json(const json& j) {
  if (j.is_object() && j.contains("dual")) {
    HAlg h(poset_from_json(j.at("dual")));
    if (j.contains("labels")) {
      const json& l = j.at("labels");
      if (!l.is_null() && (!l.is_array() || static_cast<int>(l.size()) != h.points()))
        throw FormatError("labels must name every dual point");
    }
    return h;
  }
  return HAlg(poset_from_json(j));
}

json element_json(Bits a) { return members(a); }

Bits element_from_json(const HAlg& h, const json& j) {
  Bits a = 0;
  for (int p : int_list(j, "element")) {
    if (p < 0 || p >= h.points()) throw FormatError("element point out of range");
    a |= bit(p);
  }
  if (!h.contains(a)) throw BadElement("element is not an up-set of the dual");
  return a;
}

json to_json(const Hom& f) {
  return {{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"dual_map", f.dual.map}};
}

Hom hom_from_json(const json& j) {
  HAlg s = algebra_from_json(field(j, "source"));
  HAlg t = algebra_from_json(field(j, "target"));
  return {s, t, pmorphism(t.dual(), s.dual(), field(j, "dual_map"), "dual_map")};
}

json to_json(const Diagram& d) {
  return {{"a", to_json(d.a)},
          {"b", to_json(d.b)},
          {"c", to_json(d.c)},
          {"e_b", d.e_b.dual.map},
          {"e_c", d.e_c.dual.map}};
}

Diagram diagram_from_json(const json& j) {
  HAlg a = algebra_from_json(field(j, "a"));
  HAlg b = algebra_from_json(field(j, "b"));
  HAlg c = algebra_from_json(field(j, "c"));
  Hom eb{a, b, pmorphism(b.dual(), a.dual(), field(j, "e_b"), "e_b")};
  Hom ec{a, c, pmorphism(c.dual(), a.dual(), field(j, "e_c"), "e_c")};
  Diagram d{a, b, c, eb, ec};
  validate_diagram(d);
  return d;
}

json to_json(const Chain& c) {
  json levels = json::array(), steps = json::array();
  for (const auto& l : c.levels) levels.push_back(to_json(l.dual()));
  for (const auto& s : c.steps) steps.push_back(s.dual.map);
  return {{"levels", levels}, {"steps", steps}};
}

Chain chain_from_json(const json& j) {
  const json& lv = field(j, "levels");
  const json& st = field(j, "steps");
  if (!lv.is_array() || lv.empty()) throw FormatError("levels must be a non-empty array");
  if (!st.is_array() || st.size() + 1 != lv.size()) throw FormatError("need one step between consecutive levels");
  Chain c;
  for (const auto& p : lv) c.levels.emplace_back(poset_from_json(p));
  for (std::size_t i = 0; i < st.size(); ++i) {
    Hom f{c.levels[i], c.levels[i + 1],
          pmorphism(c.levels[i + 1].dual(), c.levels[i].dual(), st[i], "step")};
    if (!f.injective()) throw FormatError("step " + std::to_string(i) + " is not an embedding");
    c.steps.push_back(std::move(f));
  }
  return c;
}

json to_json(const RawTables& t) {
  return {{"size", t.size}, {"meet", t.meet}, {"join", t.join}, {"implies", t.imp}, {"zero", t.zero}, {"one", t.one}};
}

RawTables tables_from_json(const json& j) {
  RawTables t;
  t.size = as_int(field(j, "size"), "size");
  t.meet = table(field(j, "meet"), "meet");
  t.join = table(field(j, "join"), "join");
  t.imp = table(field(j, "implies"), "implies");
  t.zero = as_int(field(j, "zero"), "zero");
  t.one = as_int(field(j, "one"), "one");
  return t;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("bad JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot write " + path);
  out << text;
  if (!out) throw IOError("write failed: " + path);
}

}  // namespace heytica

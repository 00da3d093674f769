#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "heytica/amalgam.hpp"
#include "heytica/limit.hpp"

namespace heytica {

using json = nlohmann::ordered_json;

/// {"n": int, "covers": [[i, j], ...]} with i covered by j.
json to_json(const Poset& p);
Poset poset_from_json(const json& j);

/// {"dual": <poset>, "labels": optional list of point names}. A bare poset
/// is accepted as input too.
json to_json(const HAlg& h, const std::vector<std::string>& labels = {});
HAlg algebra_from_json(const json& j);

/// An element as its sorted list of dual points.
json element_json(Bits a);
Bits element_from_json(const HAlg& h, const json& j);

/// A Hom as {"source": alg, "target": alg, "dual_map": [...]}, the map going
/// from target points to source points.
json to_json(const Hom& f);
Hom hom_from_json(const json& j);

/// {"a": alg, "b": alg, "c": alg, "e_b": dual map, "e_c": dual map}.
json to_json(const Diagram& d);
Diagram diagram_from_json(const json& j);

/// {"levels": [poset...], "steps": [dual map...]}.
json to_json(const Chain& c);
Chain chain_from_json(const json& j);

/// {"size", "meet", "join", "implies", "zero", "one"}.
json to_json(const RawTables& t);
RawTables tables_from_json(const json& j);

/// Parses text; FormatError on bad JSON.
json parse_json(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace heytica

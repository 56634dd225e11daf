#pragma once

// JSON and text-file forms of library values. Scalars and maps always use
// the canonical text syntax from parse.hpp.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "comdyn/commutant.hpp"
#include "comdyn/dynamics.hpp"
#include "comdyn/ideal.hpp"
#include "comdyn/morphism.hpp"
#include "comdyn/multiplier.hpp"
#include "comdyn/veronese.hpp"

namespace comdyn {

using nlohmann::json;

json to_json(const Point& p);
Point point_from_json(const json& j, const FieldSpec& field);

json to_json(const OrbitRecord& rec);

/// One object per stratum: {"m","l","points","cert","field","strategy"}.
std::vector<json> catalog_lines(const PreperiodicCatalog& catalog);
void write_catalog(std::ostream& out, const PreperiodicCatalog& catalog);
/// Reads strata lines for the map f; the strategy comes from the first line.
PreperiodicCatalog read_catalog(std::istream& in, const PolyMap& f);

json to_json(const VeroneseFrame& frame);
VeroneseFrame frame_from_json(const json& j);

json to_json(const CommutantResult& result);
json to_json(const CommutationIdeal& ideal);
json to_json(const InvarianceReport& report);
json to_json(const MultiplierReport& report);
json to_json(const MorphismReport& report);
json to_json(const RootCheck& check);

/// One canonical map per line; blank lines and lines starting with '#' are skipped.
std::vector<std::variant<PolyMap, ProjMap>> read_map_file(const std::string& path, const FieldSpec& field);
void write_map_file(const std::string& path, const std::vector<PolyMap>& maps);

}  // namespace comdyn

#include "comdyn/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "comdyn/parse.hpp"

namespace comdyn {

json to_json(const Point& p) {
  json arr = json::array();
  for (const auto& x : p) arr.push_back(x.to_string());
  return arr;
}

Point point_from_json(const json& j, const FieldSpec& field) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "point must be a JSON array");
  Point p;
  for (const auto& x : j) {
    if (x.is_string()) {
      p.push_back(parse_scalar(x.get<std::string>(), field));
    } else if (x.is_number_integer()) {
      p.push_back(FieldElement::from_integer(field, x.get<long>()));
    } else {
      throw Error(ErrorCode::InvalidArgument, "point coordinate must be a string or integer");
    }
  }
  return p;
}

json to_json(const OrbitRecord& rec) {
  json j;
  j["point"] = to_json(rec.base);
  j["status"] = std::string(to_string(rec.status));
  json pts = json::array();
  for (const auto& p : rec.points) pts.push_back(to_json(p));
  j["orbit"] = pts;
  if (rec.status == OrbitStatus::Preperiodic) {
    j["m"] = rec.m;
    j["l"] = rec.l;
    j["cycle_length"] = rec.cycle_length();
  }
  if (rec.bound) {
    j["height_bound"] = rec.bound->to_string();
    j["cert"] = "bound:" + rec.bound->to_string();
  } else {
    j["cert"] = "exact";
  }
  if (rec.status == OrbitStatus::EscapedHeightBound) {
    j["escaped_at"] = to_json(rec.points.back());
    j["escaped_height"] = weil_height(rec.points.back()).to_string();
  }
  return j;
}

std::vector<json> catalog_lines(const PreperiodicCatalog& catalog) {
  std::vector<json> lines;
  for (const auto& s : catalog.strata()) {
    json j;
    j["m"] = s.m;
    j["l"] = s.l;
    json pts = json::array();
    for (const auto& p : s.points) pts.push_back(to_json(p));
    j["points"] = pts;
    j["cert"] = catalog.certification();
    j["field"] = catalog.field().to_string();
    j["strategy"] = catalog.strategy().to_string();
    lines.push_back(std::move(j));
  }
  return lines;
}

void write_catalog(std::ostream& out, const PreperiodicCatalog& catalog) {
  for (const auto& line : catalog_lines(catalog)) out << line.dump() << '\n';
}

PreperiodicCatalog read_catalog(std::istream& in, const PolyMap& f) {
  std::vector<Stratum> strata;
  std::optional<CatalogStrategy> strategy;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Io, "catalog line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      if (j.contains("field") && FieldSpec::parse(j.at("field").get<std::string>()) != f.field()) {
        throw Error(ErrorCode::FieldMismatch, "catalog line " + std::to_string(lineno) + " is over another field");
      }
      if (!strategy && j.contains("strategy")) strategy = CatalogStrategy::parse(j.at("strategy").get<std::string>());
      Stratum s;
      s.m = j.at("m").get<std::size_t>();
      s.l = j.at("l").get<std::size_t>();
      for (const auto& p : j.at("points")) s.points.push_back(point_from_json(p, f.field()));
      strata.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Io, "catalog line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!strategy) strategy = CatalogStrategy::finite_field_full();
  return PreperiodicCatalog(f, *strategy, std::move(strata));
}

json to_json(const VeroneseFrame& frame) {
  json j;
  j["field"] = frame.field().to_string();
  j["n"] = frame.dimension();
  j["d"] = frame.degree();
  j["N"] = frame.size();
  json basis = json::array();
  const auto names = default_variable_names(frame.dimension());
  for (const auto& m : frame.basis()) {
    basis.push_back(to_string(Poly::term(m, FieldElement::one(frame.field())), names));
  }
  j["basis"] = basis;
  json pts = json::array();
  for (const auto& p : frame.points()) pts.push_back(to_json(p));
  j["points"] = pts;
  json rows = json::array();
  for (std::size_t r = 0; r < frame.size(); ++r) {
    json row = json::array();
    for (const auto& x : frame.matrix().row(r)) row.push_back(x.to_string());
    rows.push_back(row);
  }
  j["matrix"] = rows;
  j["determinant"] = determinant(frame.matrix()).to_string();
  j["consumed"] = frame.consumed();
  return j;
}

VeroneseFrame frame_from_json(const json& j) {
  try {
    const FieldSpec field = FieldSpec::parse(j.at("field").get<std::string>());
    std::vector<Point> pts;
    for (const auto& p : j.at("points")) pts.push_back(point_from_json(p, field));
    VeroneseFrame frame(field, j.at("n").get<std::size_t>(), j.at("d").get<unsigned>(), std::move(pts));
    if (j.contains("matrix")) {
      for (std::size_t r = 0; r < frame.size(); ++r) {
        for (std::size_t c = 0; c < frame.size(); ++c) {
          if (parse_scalar(j.at("matrix").at(r).at(c).get<std::string>(), field) != frame.matrix()(r, c)) {
            throw Error(ErrorCode::InvalidArgument, "stored frame matrix disagrees with its points");
          }
        }
      }
    }
    return frame;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, std::string("frame JSON: ") + e.what());
  }
}

json to_json(const CommutantResult& result) {
  json j;
  j["f"] = to_string(result.f);
  j["field"] = result.f.field().to_string();
  j["d"] = result.degree;
  j["method"] = result.method;
  j["completeness"] = result.completeness;
  j["condition"] = result.condition;
  j["explored"] = result.explored.get_str();
  j["count"] = result.maps.size();
  json maps = json::array();
  for (const auto& g : result.maps) maps.push_back(to_string(g));
  j["maps"] = maps;
  if (result.frame) {
    j["frame"] = to_json(*result.frame);
    j["m_d"] = result.m_d;
    j["V_d_size"] = result.v_d_size;
    j["counting_bound"] = result.counting_bound.get_str();
    json strata = json::array();
    for (const auto& [m, l, count] : result.frame_strata) strata.push_back({{"m", m}, {"l", l}, {"candidates", count}});
    j["frame_strata"] = strata;
  }
  return j;
}

json to_json(const CommutationIdeal& ideal) {
  json j;
  j["field"] = ideal.field.to_string();
  j["projective"] = ideal.projective;
  j["d"] = ideal.degree;
  j["unknowns"] = ideal.unknowns;
  j["equations"] = ideal.equation_strings();
  j["count"] = ideal.equations.size();
  return j;
}

json to_json(const InvarianceReport& report) {
  json j;
  j["containment"] = report.containment;
  j["surjective"] = report.surjective;
  json v = json::array();
  for (const auto& x : report.violations) {
    v.push_back({{"point", to_json(x.point)}, {"image", to_json(x.image)}, {"m", x.m}, {"l", x.l}, {"reason", x.reason}});
  }
  j["violations"] = v;
  json missed = json::array();
  for (const auto& p : report.missed) missed.push_back(to_json(p));
  j["not_in_image"] = missed;
  return j;
}

json to_json(const RootCheck& check) {
  json j;
  j["verdict"] = std::string(to_string(check.verdict));
  j["method"] = check.method;
  if (check.witness) j["witness"] = check.witness->to_string();
  return j;
}

json to_json(const MultiplierReport& report) {
  json j;
  j["point"] = to_json(report.point);
  j["period"] = report.period;
  json cycle = json::array();
  for (const auto& p : report.cycle) cycle.push_back(to_json(p));
  j["cycle"] = cycle;
  json factors = json::array();
  for (const auto& x : report.factors) factors.push_back(x.to_string());
  j["factors"] = factors;
  j["multiplier"] = report.lambda.to_string();
  j["critical"] = report.critical;
  if (report.companion) {
    const auto& c = *report.companion;
    json cj;
    cj["image"] = to_json(c.image);
    cj["image_period"] = c.image_period;
    cj["l0"] = c.l0;
    cj["g_critical"] = c.g_critical;
    cj["image_multiplier"] = c.image_multiplier.to_string();
    cj["image_critical"] = c.image_critical;
    cj["relation_holds"] = c.relation_holds ? json(*c.relation_holds) : json(nullptr);
    json roots = json::array();
    for (const auto& r : c.roots) {
      json rj = to_json(r.check);
      rj["k"] = r.k;
      roots.push_back(rj);
    }
    cj["roots"] = roots;
    cj["period_preservation_certified"] = c.certified;
    cj["period_preserved"] = c.preserved;
    j["companion"] = cj;
  }
  return j;
}

json to_json(const MorphismReport& report) {
  json j;
  j["verdict"] = std::string(to_string(report.verdict));
  j["method"] = report.method;
  if (report.witness) j["witness"] = to_json(*report.witness);
  if (report.resultant) j["resultant"] = report.resultant->to_string();
  j["primes_clean"] = report.primes_clean;
  j["primes_with_unlifted_zeros"] = report.primes_with_zeros;
  j["primes_bad_reduction"] = report.primes_skipped;
  return j;
}

std::vector<std::variant<PolyMap, ProjMap>> read_map_file(const std::string& path, const FieldSpec& field) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open map file '" + path + "'");
  std::vector<std::variant<PolyMap, ProjMap>> maps;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    maps.push_back(parse_map(line, field));
  }
  return maps;
}

void write_map_file(const std::string& path, const std::vector<PolyMap>& maps) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write map file '" + path + "'");
  for (const auto& m : maps) out << to_string(m) << '\n';
}

}  // namespace comdyn

#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "comdyn/io.hpp"
#include "comdyn/parse.hpp"

namespace comdyn::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string field = "Q";
  std::string f;
  std::string g;
  std::string p;
  std::string height_bound;
  std::size_t step_limit = 1000;
  unsigned d = 0;
  std::string method;
  std::string catalog = "bounded:0";
  unsigned threads = 1;
  std::string out;
  std::string points;
  std::string images;
  std::string frame;
  std::string support;
  std::string primes;
  std::size_t cap = kDefaultAssignmentCap;
  long grid = -1;
  long denom = 1;
  bool table = false;
};

class Emitter {
 public:
  Emitter(std::ostream& out, const std::string& path) : out_(out) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    }
  }
  void operator()(const json& j) {
    const std::string line = j.dump();
    out_ << line << '\n';
    if (file_.is_open()) file_ << line << '\n';
  }

 private:
  std::ostream& out_;
  std::ofstream file_;
};

std::string read_first_map_line(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open map file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] != '#') return line;
  }
  throw Error(ErrorCode::Io, "map file '" + path + "' has no map");
}

std::variant<PolyMap, ProjMap> load_map(const std::string& text, const FieldSpec& field, const char* flag) {
  if (text.empty()) throw UsageError(std::string("missing ") + flag);
  if (text.front() == '@') return parse_map(read_first_map_line(text.substr(1)), field);
  return parse_map(text, field);
}

PolyMap load_affine(const std::string& text, const FieldSpec& field, const char* flag) {
  auto m = load_map(text, field, flag);
  if (auto* a = std::get_if<PolyMap>(&m)) return *a;
  throw Error(ErrorCode::InvalidArgument, std::string(flag) + " must be an affine map in parentheses");
}

PreperiodicCatalog load_catalog(const std::string& spec, const PolyMap& f) {
  if (!spec.empty() && spec.front() == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw Error(ErrorCode::Io, "cannot open catalog '" + spec.substr(1) + "'");
    return read_catalog(in, f);
  }
  return build_catalog(f, CatalogStrategy::parse(spec));
}

GridSpec parse_grid_method(const std::string& method, const Options& o, std::size_t n, unsigned degree) {
  // grid:<bound>[/<denom>]
  GridSpec grid;
  const std::string body = method.substr(5);
  const auto slash = body.find('/');
  try {
    grid.coeff_bound = std::stol(body.substr(0, slash));
    if (slash != std::string::npos) grid.denom_bound = std::stol(body.substr(slash + 1));
  } catch (const std::exception&) {
    throw UsageError("--method grid:<bound>[/<denom>] expected, got '" + method + "'");
  }
  grid.cap = o.cap;
  grid.threads = o.threads;
  if (!o.support.empty()) {
    std::vector<std::vector<Monomial>> supports;
    std::stringstream comps(o.support);
    std::string comp;
    const FieldSpec q = FieldSpec::rationals();
    while (std::getline(comps, comp, ';')) {
      std::vector<Monomial> sup;
      std::stringstream items(comp);
      std::string item;
      while (std::getline(items, item, ',')) {
        const Poly m = parse_polynomial(item, q, n);
        if (m.size() != 1) throw Error(ErrorCode::InvalidArgument, "support entry '" + item + "' is not a monomial");
        sup.push_back(m.terms().begin()->first);
      }
      supports.push_back(std::move(sup));
    }
    (void)degree;
    grid.supports = std::move(supports);
  }
  return grid;
}

std::vector<Point> images_or_map(const Options& o, const VeroneseFrame& frame, const FieldSpec& field) {
  if (!o.images.empty()) return parse_points(o.images, field);
  if (!o.g.empty()) {
    const PolyMap g = load_affine(o.g, field, "--g");
    std::vector<Point> out;
    for (const auto& p : frame.points()) out.push_back(evaluate(g, p));
    return out;
  }
  throw UsageError("interp needs --images or --g");
}

VeroneseFrame frame_from_options(const Options& o, const FieldSpec& field) {
  if (!o.frame.empty()) {
    const std::string path = o.frame.front() == '@' ? o.frame.substr(1) : o.frame;
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open frame '" + path + "'");
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Io, std::string("frame file: ") + e.what());
    }
    return frame_from_json(j);
  }
  if (o.d == 0) throw UsageError("--d is required");
  if (!o.points.empty()) {
    const auto pts = parse_points(o.points, field);
    if (pts.empty()) throw UsageError("--points is empty");
    return find_general_position(pts, field, pts.front().size(), o.d);
  }
  if (!o.f.empty()) {
    const PolyMap f = load_affine(o.f, field, "--f");
    const auto catalog = load_catalog(o.catalog, f);
    return find_general_position(catalog.stream(), catalog.field(), f.dimension(), o.d);
  }
  throw UsageError("frame needs --points, --frame or --f with --catalog");
}

std::vector<std::uint32_t> parse_primes(const std::string& text) {
  if (text.empty()) return kDefaultMorphismPrimes;
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      const unsigned long v = std::stoul(item);
      if (v > 100000) throw UsageError("prime " + item + " too large for enumeration");
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::logic_error&) {
      throw UsageError("--primes expects comma-separated integers");
    }
  }
  return out;
}

json maps_json(const std::vector<PolyMap>& maps) {
  json arr = json::array();
  for (const auto& m : maps) arr.push_back(to_string(m));
  return arr;
}

void print_table(std::ostream& out, const std::vector<ExampleRow>& rows) {
  out << std::left << std::setw(18) << "id" << std::setw(14) << "status" << "claim\n";
  for (const auto& r : rows) out << std::setw(18) << r.id << std::setw(14) << r.status << r.claim << '\n';
}

int dispatch(const std::string& cmd, const Options& o, std::ostream& out) {
  Emitter emit(out, o.out);
  const FieldSpec field = FieldSpec::parse(o.field);

  if (cmd == "orbit") {
    const PolyMap f = load_affine(o.f, field, "--f");
    if (o.p.empty()) throw UsageError("missing --p");
    std::optional<HeightValue> bound;
    if (!o.height_bound.empty()) bound = HeightValue::parse(o.height_bound);
    const auto rec = orbit(f, parse_point(o.p, field), o.step_limit, bound);
    json j = to_json(rec);
    j["f"] = to_string(f);
    emit(j);
  } else if (cmd == "catalog") {
    const PolyMap f = load_affine(o.f, field, "--f");
    const auto catalog = build_catalog(f, CatalogStrategy::parse(o.catalog), o.cap);
    for (const auto& line : catalog_lines(catalog)) emit(line);
  } else if (cmd == "verify-invariance") {
    const PolyMap f = load_affine(o.f, field, "--f");
    const auto catalog = load_catalog(o.catalog, f);
    const PolyMap g = load_affine(o.g, catalog.field(), "--g");
    json j = to_json(verify_invariance(g, catalog));
    j["catalog_size"] = catalog.size();
    emit(j);
  } else if (cmd == "frame") {
    emit(to_json(frame_from_options(o, field)));
  } else if (cmd == "interp") {
    const VeroneseFrame frame = frame_from_options(o, field);
    const auto images = images_or_map(o, frame, frame.field());
    const PolyMap g = interpolate_map(frame, images);
    emit({{"map", to_string(g)}, {"degree", g.degree()}, {"frame_size", frame.size()}});
  } else if (cmd == "commute") {
    const auto f = load_map(o.f, field, "--f");
    const auto g = load_map(o.g, field, "--g");
    if (f.index() != g.index()) throw Error(ErrorCode::InvalidArgument, "--f and --g must both be affine or both projective");
    const bool c = f.index() == 0 ? commutes_affine(std::get<PolyMap>(f), std::get<PolyMap>(g))
                                  : commutes_projective(std::get<ProjMap>(f), std::get<ProjMap>(g));
    emit({{"commutes", c}});
  } else if (cmd == "ideal") {
    if (o.d == 0) throw UsageError("--d is required");
    const auto f = load_map(o.f, field, "--f");
    const CommutationIdeal ideal =
        f.index() == 0 ? commutation_ideal(std::get<PolyMap>(f), o.d) : commutation_ideal(std::get<ProjMap>(f), o.d);
    json j = to_json(ideal);
    if (o.grid >= 0) {
      json sols = json::array();
      for (const auto& v : ideal_grid_solutions(ideal, o.grid, o.denom, o.cap)) {
        auto comps = ideal.components_from(v);
        int deg = -1;
        for (const auto& c : comps) deg = std::max(deg, c.degree());
        if (deg < 0 && ideal.projective) continue;
        const std::string text = ideal.projective ? to_string(ProjMap(ideal.field, std::move(comps)))
                                                  : to_string(PolyMap(ideal.field, std::move(comps)));
        sols.push_back({{"map", text}, {"degree", deg}});
      }
      j["grid_solutions"] = sols;
    }
    emit(j);
  } else if (cmd == "commutant") {
    if (o.d == 0) throw UsageError("--d is required");
    const PolyMap f = load_affine(o.f, field, "--f");
    if (o.method.starts_with("grid:")) {
      emit(to_json(brute_force_commutant(f, o.d, parse_grid_method(o.method, o, f.dimension(), o.d))));
    } else if (o.method.empty() || o.method == "catalog") {
      const auto catalog = load_catalog(o.catalog, f);
      emit(to_json(commutant_search(catalog.map(), o.d, catalog, o.cap, o.threads)));
    } else {
      throw UsageError("--method must be catalog or grid:<bound>[/<denom>]");
    }
  } else if (cmd == "aut") {
    const auto f = load_map(o.f, field, "--f");
    const std::string method = o.method.empty() ? "grid:1" : o.method;
    if (const auto* phi = std::get_if<ProjMap>(&f)) {
      if (!method.starts_with("grid:")) throw UsageError("projective aut supports --method grid:<bound> only");
      const auto grid = parse_grid_method(method, o, phi->components().size(), 1);
      const auto res = projective_automorphisms(*phi, grid.coeff_bound, o.cap);
      json com = json::array();
      json aut = json::array();
      for (const auto& m : res.commuting) com.push_back(to_string(m));
      for (const auto& m : res.invertible) aut.push_back(to_string(m));
      emit({{"f", to_string(*phi)}, {"method", method}, {"explored", res.explored.get_str()}, {"com", com}, {"aut", aut}});
    } else {
      const PolyMap& a = std::get<PolyMap>(f);
      AutomorphismResult res;
      if (method.starts_with("grid:")) {
        res = automorphisms(a, parse_grid_method(method, o, a.dimension(), 1));
      } else if (method == "catalog") {
        const auto catalog = load_catalog(o.catalog, a);
        GridSpec grid;
        grid.cap = o.cap;
        grid.threads = o.threads;
        res = automorphisms(catalog.map(), grid, &catalog);
      } else {
        throw UsageError("--method must be catalog or grid:<bound>[/<denom>]");
      }
      json j = to_json(res.commutant);
      j["com"] = maps_json(res.commutant.maps);
      j["aut"] = maps_json(res.invertible);
      emit(j);
    }
  } else if (cmd == "multiplier") {
    const PolyMap f = load_affine(o.f, field, "--f");
    if (o.p.empty()) throw UsageError("missing --p");
    std::optional<PolyMap> g;
    if (!o.g.empty()) g = load_affine(o.g, field, "--g");
    emit(to_json(multiplier(f, parse_point(o.p, field), g, o.step_limit)));
  } else if (cmd == "morphism-check") {
    const auto f = load_map(o.f, field, "--f");
    const auto* phi = std::get_if<ProjMap>(&f);
    if (phi == nullptr) throw Error(ErrorCode::InvalidArgument, "--f must be a projective map in brackets");
    emit(to_json(is_morphism(*phi, parse_primes(o.primes))));
  } else if (cmd == "paper-examples") {
    const auto rows = paper_examples();
    int pass = 0;
    int fail = 0;
    int discrepancy = 0;
    if (o.table) {
      print_table(out, rows);
    } else {
      for (const auto& r : rows) {
        emit({{"id", r.id}, {"claim", r.claim}, {"status", r.status}, {"observed", r.observed},
              {"expected", r.expected}, {"note", r.note}});
      }
    }
    for (const auto& r : rows) {
      pass += r.status == "pass";
      fail += r.status == "fail";
      discrepancy += r.status == "discrepancy";
    }
    if (!o.table) emit({{"summary", {{"pass", pass}, {"fail", fail}, {"discrepancy", discrepancy}}}});
    return fail == 0 ? kOk : kDomainError;
  }
  return kOk;
}

json error_object(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Exact arithmetic for commuting polynomial dynamical systems", "comdyn"};
  app.require_subcommand(1);
  Options o;

  struct Spec {
    const char* name;
    const char* help;
  };
  static const Spec kCommands[] = {
      {"orbit", "orbit of a point, with optional height-bound escape"},
      {"catalog", "preperiodic catalog as JSON lines, one stratum per line"},
      {"verify-invariance", "check g(Pre_{m,l}(f)) inside Pre_{m,l}(f) on a catalog"},
      {"frame", "general-position frame from a point stream"},
      {"interp", "interpolate a map from its images on a frame"},
      {"commute", "test f o g = g o f"},
      {"ideal", "commutation equations in the unknown coefficients"},
      {"commutant", "enumerate Com(f, d) by catalog search or coefficient grid"},
      {"aut", "Com(f, 1) and its invertible subset"},
      {"multiplier", "multiplier of a periodic point, with period certificate for a companion"},
      {"morphism-check", "decide whether a projective map has no common zero"},
      {"paper-examples", "reproduce the worked examples as a pass/fail/discrepancy table"},
  };
  for (const auto& spec : kCommands) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--field", o.field, "Q, Qzeta:<p> or Fp:<p>")->capture_default_str();
    sub->add_option("--out", o.out, "also write output lines to this file");
    sub->add_option("--threads", o.threads, "worker threads for enumeration")->check(CLI::Range(1U, 256U));
    sub->add_option("--cap", o.cap, "explosion guard for enumerations");
    const std::string name = spec.name;
    if (name == "paper-examples") {
      sub->add_flag("--table", o.table, "human-readable table");
      continue;
    }
    sub->add_option("--f", o.f, "map text or @file");
    sub->add_option("--g", o.g, "second map text or @file");
    sub->add_option("--p", o.p, "point, comma separated");
    sub->add_option("--height-bound", o.height_bound, "log height bound B, or H:<int>");
    sub->add_option("--step-limit", o.step_limit, "maximum iterations")->check(CLI::PositiveNumber);
    sub->add_option("--d", o.d, "degree")->check(CLI::PositiveNumber);
    sub->add_option("--method", o.method, "catalog | grid:<bound>[/<denom>]");
    sub->add_option("--catalog", o.catalog, "bounded:<B> | bounded:H:<int> | monomial:<N> | finite | @file.jsonl")
        ->capture_default_str();
    sub->add_option("--points", o.points, "points separated by ';'");
    sub->add_option("--images", o.images, "image points separated by ';'");
    sub->add_option("--frame", o.frame, "frame JSON file");
    sub->add_option("--support", o.support, "per-component monomials: 'x^2,x*y;y^2'");
    sub->add_option("--primes", o.primes, "comma separated primes for morphism-check");
    sub->add_option("--grid", o.grid, "solve the ideal on coefficients |a| <= grid");
    sub->add_option("--denom", o.denom, "grid denominators up to this bound")->check(CLI::PositiveNumber);
  }

  std::vector<const char*> argv{"comdyn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    out << error_object("UsageError", e.what()).dump() << '\n';
    return kUsageError;
  }

  const auto chosen = app.get_subcommands();
  const std::string cmd = chosen.front()->get_name();
  try {
    return dispatch(cmd, o, out);
  } catch (const UsageError& e) {
    out << error_object("UsageError", e.what()).dump() << '\n';
    return kUsageError;
  } catch (const comdyn::SyntaxError& e) {
    json j = error_object(std::string(to_string(e.code())), e.what());
    j["error"]["position"] = e.position();
    j["error"]["expected"] = e.expected();
    out << j.dump() << '\n';
    return kDomainError;
  } catch (const comdyn::StreamExhausted& e) {
    json j = error_object(std::string(to_string(e.code())), e.what());
    j["error"]["rank"] = e.rank();
    j["error"]["needed"] = e.needed();
    out << j.dump() << '\n';
    return kDomainError;
  } catch (const comdyn::Error& e) {
    out << error_object(std::string(to_string(e.code())), e.what()).dump() << '\n';
    return kDomainError;
  } catch (const std::bad_alloc&) {
    out << error_object("OutOfMemory", "allocation failed").dump() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    out << error_object("Internal", e.what()).dump() << '\n';
    return kDomainError;
  }
}

}  // namespace comdyn::cli

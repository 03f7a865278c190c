#include "mrd/json_io.hpp"

#include <fstream>

#include "mrd/error.hpp"
#include "mrd/parse.hpp"

namespace mrd {

namespace {

Error schema(const std::string& what) { return Error(ErrorCode::InvalidArgument, "schema: " + what); }

Rational rational_field(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw schema("expected a rational as \"p/q\" or an integer");
}

Interval interval_field(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw schema("expected an interval [lo, hi]");
  return {rational_field(j[0]), rational_field(j[1])};
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_string()) throw schema(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::size_t index_field(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number_integer() || v.get<long>() < 0) throw schema(std::string("field '") + key + "' must be an index");
  return v.get<std::size_t>();
}

std::vector<std::string> names_field(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_array()) throw schema(std::string("field '") + key + "' must be an array of names");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw schema(std::string("field '") + key + "' must be an array of names");
    out.push_back(x.get<std::string>());
  }
  return out;
}

// Wraps library-external exceptions from nlohmann into schema errors.
template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw schema(e.what());
  }
}

}  // namespace

Json load_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, path.string() + ": " + e.what());
  }
}

Json to_json(const Interval& i) { return Json::array({to_string(i.lo), to_string(i.hi)}); }

LatticeInstance lattice_from_json(const Json& j) {
  LatticeInstance inst;
  const Json& rank = member(j, "rank");
  if (!rank.is_number_integer() || rank.get<long>() < 1) throw schema("rank must be a positive integer");
  inst.rank = rank.get<std::size_t>();
  const Json& gens = member(j, "generators");
  if (!gens.is_array()) throw schema("generators must be an array");
  inst.generators.resize(static_cast<Eigen::Index>(gens.size()), static_cast<Eigen::Index>(inst.rank));
  for (std::size_t r = 0; r < gens.size(); ++r) {
    if (!gens[r].is_array() || gens[r].size() != inst.rank) throw schema("generator width must equal the rank");
    for (std::size_t c = 0; c < inst.rank; ++c) {
      if (!gens[r][c].is_number_integer()) throw schema("generator entries must be integers");
      inst.generators(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = gens[r][c].get<std::int64_t>();
    }
  }
  for (const auto& l : member(j, "lengths")) inst.lengths.push_back(rational_field(l));
  inst.validate();
  return inst;
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const LatticeInstance& inst) {
  Json lengths = Json::array();
  for (const auto& l : inst.lengths) lengths.push_back(to_string(l));
  return {{"rank", inst.rank}, {"generators", to_json(inst.generators)}, {"lengths", lengths}};
}

Json to_json(const PositiveBasis& b) {
  return {{"change_of_basis", to_json(b.change_of_basis)},
          {"expressions", to_json(b.expressions)},
          {"determinant", determinant(b.change_of_basis).get_str()},
          {"steps", b.steps}};
}

BandSystem band_system_from_json(const Json& j) {
  std::vector<Interval> comps;
  for (const auto& c : member(j, "components")) comps.push_back(interval_field(c));
  std::vector<Base> bases;
  for (const auto& b : member(j, "bases")) {
    if (b.contains("orientation")) {
      const Json& o = b.at("orientation");
      if (!o.is_string() || (o != "+" && o != "-")) throw schema("orientation must be \"+\" or \"-\"");
      if (o == "-")
        throw Error(ErrorCode::InvalidBandSystem, "orientation-reversing bases are not supported");
    }
    const Json& id = member(b, "id");
    const Json& partner = member(b, "partner");
    if (!id.is_number_integer() || !partner.is_number_integer()) throw schema("base id and partner must be integers");
    bases.push_back({id.get<int>(), interval_field(member(b, "support")), partner.get<int>(),
                     rational_field(member(b, "offset"))});
  }
  std::vector<Rational> marks;
  if (j.contains("marks"))
    for (const auto& m : j.at("marks")) marks.push_back(rational_field(m));
  return BandSystem(std::move(comps), std::move(bases), std::move(marks));
}

Json to_json(const BandSystem& bs) {
  Json comps = Json::array();
  for (const auto& c : bs.components()) comps.push_back(to_json(c));
  Json bases = Json::array();
  for (const auto& b : bs.bases())
    bases.push_back({{"id", b.id}, {"support", to_json(b.support)}, {"partner", b.partner}, {"offset", to_string(b.offset)}});
  Json out{{"components", comps}, {"bases", bases}};
  if (!bs.marks().empty()) {
    Json marks = Json::array();
    for (const auto& m : bs.marks()) marks.push_back(to_string(m));
    out["marks"] = marks;
  }
  return out;
}

Json to_json(const MoveRecord& r) {
  return {{"move", to_string(r.move)},
          {"args", r.args},
          {"chi_before", r.chi_before},
          {"chi_after", r.chi_after},
          {"total_length", to_string(r.total_length)}};
}

Json to_json(const GeneratorSet& g) {
  Json out = Json::array();
  for (const auto& e : g.elements)
    out.push_back({{"id", e.id}, {"segment", to_json(e.segment)}, {"length", to_string(e.segment.length())}});
  return out;
}

Json to_json(const WeightClassification& w) {
  Json tags = Json::array();
  for (auto t : w.tags) tags.push_back(to_string(t));
  Json out{{"c_p", w.c_p}, {"c1", to_string(w.c1)}, {"classes", w.classes}, {"separators", w.separators},
           {"tags", tags}, {"e_cap", w.e_cap.get_str()}};
  out["d1"] = w.d1 ? Json(to_string(*w.d1)) : Json(nullptr);
  out["d2"] = w.d2 ? Json(to_string(*w.d2)) : Json(nullptr);
  return out;
}

SolutionGraph solution_graph_from_json(const Json& j) {
  return guarded([&] {
    SolutionGraph g;
    g.vertices = index_field(j, "vertices");
    g.base_point = j.contains("base_point") ? index_field(j, "base_point") : 0;
    for (const auto& e : member(j, "edges"))
      g.edges.push_back({string_field(e, "label"), index_field(e, "from"), index_field(e, "to"),
                         e.value("separating", false)});
    const Json& paths = member(j, "paths");
    if (!paths.is_object()) throw schema("paths must map variables to label lists");
    for (const auto& [var, path] : paths.items()) g.paths[var] = path.get<std::vector<std::string>>();
    g.validate();
    return g;
  });
}

Json to_json(const SolutionGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"label", e.label}, {"from", e.from}, {"to", e.to}, {"separating", e.separating}});
  Json paths = Json::object();
  for (const auto& [var, path] : g.paths) paths[var] = path;
  return {{"vertices", g.vertices}, {"base_point", g.base_point}, {"edges", edges}, {"paths", paths}};
}

TwistGenerator twist_from_json(const Json& j) {
  return guarded([&] {
    TwistGenerator t;
    std::string kind = string_field(j, "kind");
    if (kind == "dehn_twist") {
      t.kind = TwistGenerator::Kind::DehnTwist;
      t.target = string_field(j, "edge");
      t.word = names_field(j, "word");
      std::string side = j.value("side", "left");
      if (side != "left" && side != "right") throw schema("side must be left or right");
      t.right = side == "right";
    } else if (kind == "generalized_abelian") {
      t.kind = TwistGenerator::Kind::GeneralizedAbelian;
      t.variables = names_field(j, "variables");
    } else if (kind == "label_twist") {
      t.kind = TwistGenerator::Kind::LabelTwist;
      t.target = string_field(j, "label");
      t.word = names_field(j, "word");
    } else {
      throw schema("unknown twist kind '" + kind + "'");
    }
    return t;
  });
}

Json to_json(const TwistGenerator& t) {
  Json out{{"kind", to_string(t.kind)}};
  switch (t.kind) {
    case TwistGenerator::Kind::DehnTwist:
      out["edge"] = t.target;
      out["word"] = t.word;
      out["side"] = t.right ? "right" : "left";
      break;
    case TwistGenerator::Kind::GeneralizedAbelian:
      out["variables"] = t.variables;
      break;
    case TwistGenerator::Kind::LabelTwist:
      out["label"] = t.target;
      out["word"] = t.word;
      break;
  }
  return out;
}

Resolution resolution_from_json(const Json& j) {
  return guarded([&] {
    Resolution r;
    r.name = j.value("name", "");
    for (const auto& l : member(j, "levels")) {
      ResolutionLevel level;
      if (l.contains("presentation")) level.presentation = names_field(l, "presentation");
      level.decomposition = l.value("decomposition", "graph");
      if (level.decomposition != "graph" && level.decomposition != "separable" && level.decomposition != "abelian")
        throw schema("decomposition must be graph, separable or abelian");
      if (l.contains("twists"))
        for (const auto& t : l.at("twists")) level.twists.push_back(twist_from_json(t));
      r.levels.push_back(std::move(level));
    }
    r.terminal = solution_graph_from_json(member(j, "terminal"));
    r.validate();
    return r;
  });
}

Json to_json(const Resolution& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    Json twists = Json::array();
    for (const auto& t : l.twists) twists.push_back(to_json(t));
    levels.push_back({{"presentation", l.presentation}, {"decomposition", l.decomposition}, {"twists", twists}});
  }
  return {{"name", r.name}, {"levels", levels}, {"terminal", to_json(r.terminal)}};
}

MRDiagram load_diagram(const std::filesystem::path& path) {
  Json j = load_json(path);
  MRDiagram m;
  m.system = parse_equations(guarded([&] { return string_field(j, "system"); }));
  for (const auto& r : guarded([&] { return member(j, "resolutions"); })) {
    if (r.is_string())
      m.resolutions.push_back(resolution_from_json(load_json(path.parent_path() / r.get<std::string>())));
    else
      m.resolutions.push_back(resolution_from_json(r));
  }
  return m;
}

SeparableDecomposition decomposition_from_json(const Json& j) {
  return guarded([&] {
    SeparableDecomposition d;
    for (const auto& v : member(j, "vertices")) d.vertices.push_back(v.get<std::vector<std::string>>());
    for (const auto& e : member(j, "edges"))
      d.edges.push_back({index_field(e, "from"), index_field(e, "to"), names_field(e, "labels")});
    const Json& base = member(j, "base");
    if (base.contains("edge")) {
      d.base_on_edge = true;
      d.base = index_field(base, "edge");
    } else {
      d.base = index_field(base, "vertex");
    }
    return d;
  });
}

std::pair<EquationSystem, SeparableDecomposition> load_decomposition(const std::filesystem::path& path) {
  Json j = load_json(path);
  auto system = parse_equations(guarded([&] { return string_field(j, "system"); }));
  auto d = decomposition_from_json(j);
  d.validate(system);
  return {std::move(system), std::move(d)};
}

namespace {

// "u=ab, v=b" -> pairs of trimmed names and values.
std::vector<std::pair<std::string, std::string>> split_bindings(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (start <= text.size()) {
    auto end = text.find_first_of(", ", start);
    if (end == std::string::npos) end = text.size();
    std::string item = trim(text.substr(start, end - start));
    start = end + 1;
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "binding '" + item + "' has no '='");
    out.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
  }
  return out;
}

}  // namespace

LabelAssignment parse_assignment(const std::string& text, const EquationSystem& system) {
  LabelAssignment a;
  for (const auto& [name, value] : split_bindings(text)) {
    auto w = parse_positive_word(value, system.alphabet());
    if (w.empty()) throw Error(ErrorCode::InvalidArgument, "label " + name + " has an empty value");
    for (auto x : w)
      if (!system.alphabet().is_coefficient(x)) throw Error(ErrorCode::InvalidArgument, "label values use coefficients only");
    a.images[name] = std::move(w);
  }
  return a;
}

Substitution parse_substitution(const std::string& text, const EquationSystem& system) {
  std::map<Symbol, PositiveWord> images;
  const auto& al = system.alphabet();
  for (const auto& [name, value] : split_bindings(text)) {
    if (!al.contains(name) || !al.is_variable(al.at(name)))
      throw Error(ErrorCode::InvalidArgument, "'" + name + "' is not a variable of the system");
    auto w = parse_positive_word(value, al);
    for (auto x : w)
      if (!al.is_coefficient(x)) throw Error(ErrorCode::InvalidArgument, "values use coefficients only");
    images[al.at(name)] = std::move(w);
  }
  for (auto v : system.variables())
    if (!images.count(v)) throw UnboundVariable(al.name(v));
  return Substitution(std::move(images), system.rank());
}

Json to_json(const Substitution& s, const Alphabet& alphabet) {
  Json out = Json::object();
  for (const auto& [v, w] : s.images()) out[alphabet.name(v)] = format(w, alphabet);
  return out;
}

Json to_json(const std::vector<Substitution>& s, const Alphabet& alphabet) {
  Json out = Json::array();
  for (const auto& x : s) out.push_back(to_json(x, alphabet));
  return out;
}

Json to_json(const CoverageReport& r, const Alphabet& alphabet) {
  return {{"oracle", r.oracle_count},
          {"covered", r.covered.size()},
          {"uncovered", r.uncovered.size()},
          {"produced", r.produced},
          {"graph", to_string(r.validity)},
          {"uncovered_solutions", to_json(r.uncovered, alphabet)}};
}

Json to_json(const DiagramReport& r, const Alphabet& alphabet) {
  Json per = Json::array();
  for (const auto& c : r.per_resolution) {
    Json x = to_json(c, alphabet);
    x.erase("uncovered_solutions");
    per.push_back(std::move(x));
  }
  return {{"oracle", r.oracle_count},
          {"resolutions", per},
          {"uncovered", r.uncovered.size()},
          {"uncovered_solutions", to_json(r.uncovered, alphabet)}};
}

Json to_json(const MarkedSubstitution& m) {
  Json markers = Json::array();
  for (const auto& [l, x] : m.markers) markers.push_back(l);
  return {{"markers", markers}, {"marked", to_json(m.marked, m.alphabet)}};
}

}  // namespace mrd

#pragma once

#include <filesystem>

#include "json.hpp"
#include "mrd/diagrams.hpp"
#include "mrd/lattice.hpp"
#include "mrd/pseudogroup.hpp"

namespace mrd {

using Json = nlohmann::ordered_json;

Json load_json(const std::filesystem::path& path);

// {rank, generators: [[int]], lengths: ["p/q"]}
LatticeInstance lattice_from_json(const Json& j);
Json to_json(const LatticeInstance& inst);
Json to_json(const PositiveBasis& basis);
Json to_json(const IntMatrix& m);

// {components: [["p/q","r/s"]], bases: [{id, support: ["p/q","r/s"], partner, offset: "p/q"}], marks: ["p/q"]}
BandSystem band_system_from_json(const Json& j);
Json to_json(const BandSystem& bs);
Json to_json(const MoveRecord& record);
Json to_json(const GeneratorSet& g);
Json to_json(const WeightClassification& w);
Json to_json(const Interval& i);

// {vertices, base_point, edges: [{label, from, to, separating}], paths: {X: ["u", "v"]}}
SolutionGraph solution_graph_from_json(const Json& j);
Json to_json(const SolutionGraph& g);
// {kind: dehn_twist | generalized_abelian | label_twist, ...}
TwistGenerator twist_from_json(const Json& j);
Json to_json(const TwistGenerator& t);
// {name, levels: [{presentation, decomposition, twists}], terminal}
Resolution resolution_from_json(const Json& j);
Json to_json(const Resolution& r);
/// {system: "equations text", resolutions: [resolution or "relative/path.json"]}
MRDiagram load_diagram(const std::filesystem::path& path);
/// {system, vertices: [["X"]], edges: [{from, to, labels}], base: {vertex: i} or {edge: i}}
std::pair<EquationSystem, SeparableDecomposition> load_decomposition(const std::filesystem::path& path);
SeparableDecomposition decomposition_from_json(const Json& j);
/// "u=ab,v=b" style assignments and substitutions.
LabelAssignment parse_assignment(const std::string& text, const EquationSystem& system);
Substitution parse_substitution(const std::string& text, const EquationSystem& system);

Json to_json(const Substitution& s, const Alphabet& alphabet);
Json to_json(const std::vector<Substitution>& s, const Alphabet& alphabet);
Json to_json(const CoverageReport& r, const Alphabet& alphabet);
Json to_json(const DiagramReport& r, const Alphabet& alphabet);
Json to_json(const MarkedSubstitution& m);

}  // namespace mrd

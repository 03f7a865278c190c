#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrd/oracle.hpp"
#include "mrd/systems.hpp"

namespace mrd {

struct GraphEdge {
  std::string label;
  std::size_t from = 0;
  std::size_t to = 0;
  bool separating = false;
};

/// Directed graph with distinctly labeled edges. Each variable is a closed
/// path at the base point that follows edges forwards, listed by label.
struct SolutionGraph {
  std::size_t vertices = 1;
  std::size_t base_point = 0;
  std::vector<GraphEdge> edges;
  std::map<std::string, std::vector<std::string>> paths;

  /// Throws InvalidGraph.
  void validate() const;
  std::vector<std::string> labels() const;
};

/// Label -> nonempty coefficient word.
struct LabelAssignment {
  std::map<std::string, PositiveWord> images;
};

/// Each variable becomes the concatenation of its path's label images. The
/// graph must name exactly the system's variables. Throws UnboundLabel.
Substitution substitute(const SolutionGraph& g, const LabelAssignment& a, const EquationSystem& system);

enum class GraphValidity { Formal, Empirical, Invalid };
const char* to_string(GraphValidity v);

struct GraphVerification {
  GraphValidity status = GraphValidity::Invalid;
  std::optional<std::size_t> failing_equation;  // first equation that is not a label identity
  std::optional<LabelAssignment> counterexample;
};
/// Checks the equations as identities over the free semigroup on the labels;
/// when that fails, tries every assignment with images up to `sample_len`.
GraphVerification verify_graph(const SolutionGraph& g, const EquationSystem& system, std::size_t sample_len = 3);

struct TwistGenerator {
  enum class Kind { DehnTwist, GeneralizedAbelian, LabelTwist };
  Kind kind = Kind::DehnTwist;
  /// Dehn twist: target <- word . target (or target . word when `right`),
  /// with the word over the system's letters. Label twist: label <- word over
  /// labels.
  std::string target;
  std::vector<std::string> word;
  bool right = false;
  /// Generalized abelian: these values share a primitive root r and all
  /// become r^m, m the exponent slot.
  std::vector<std::string> variables;
};
const char* to_string(TwistGenerator::Kind k);

/// Dehn and generalized abelian twists on a solution. Throws
/// PreconditionViolated when the twist does not apply (values not in one
/// cyclic subgroup, label twist) and TwistBreaksSolution when the result is
/// not a solution.
Substitution apply_twist(const TwistGenerator& t, const Substitution& s, const EquationSystem& system,
                         std::size_t exponent = 1);
/// Label twists act on the assignment.
LabelAssignment apply_label_twist(const TwistGenerator& t, const LabelAssignment& a);

struct ResolutionLevel {
  std::vector<std::string> presentation;  // relations of the level's pair, as text
  std::string decomposition = "graph";     // graph | separable | abelian
  std::vector<TwistGenerator> twists;
};

struct Resolution {
  std::string name;
  std::vector<ResolutionLevel> levels;  // outermost first
  SolutionGraph terminal;

  /// Terminal edges must all be separating. Throws InvalidGraph.
  void validate() const;
};

struct MRDiagram {
  EquationSystem system;
  std::vector<Resolution> resolutions;
};

struct CoverageReport {
  std::size_t oracle_count = 0;
  std::vector<Substitution> covered;
  std::vector<Substitution> uncovered;
  std::size_t produced = 0;  // distinct solutions reached, any length
  GraphValidity validity = GraphValidity::Invalid;
};

/// Terminal substitutions with label images up to budget.max_len, closed
/// under twist words of length <= twist_depth (exponent slots 1..max_len),
/// compared with the oracle. Throws BudgetExceeded.
CoverageReport family_cover_check(const Resolution& r, const EquationSystem& system, const SearchBudget& budget,
                                  std::size_t twist_depth);

struct DiagramReport {
  std::size_t oracle_count = 0;
  std::vector<CoverageReport> per_resolution;
  std::vector<Substitution> uncovered;
};
DiagramReport diagram_check(const MRDiagram& m, const SearchBudget& budget, std::size_t twist_depth);

struct DecompositionEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  /// One label; two when the base point sits inside this edge (the part
  /// towards `from`, then the part towards `to`).
  std::vector<std::string> labels;
};

/// Tree of vertex groups joined by edges with trivial stabilizers. Variables
/// live at vertices; coefficients are global.
struct SeparableDecomposition {
  std::vector<std::vector<std::string>> vertices;
  std::vector<DecompositionEdge> edges;
  bool base_on_edge = false;
  std::size_t base = 0;  // vertex index, or edge index when base_on_edge

  /// Throws InvalidGraph.
  void validate(const EquationSystem& system) const;
  /// Labels crossed, in order, on the way from the base point to each vertex.
  std::vector<std::vector<std::string>> crossings() const;
};

struct MarkedSubstitution {
  Alphabet alphabet;  // the system's alphabet plus one coefficient per label
  Substitution marked;
  std::map<std::string, Symbol> markers;
};

/// Inserts each crossed label's marker once into every variable beyond it so
/// that equations spanning several vertices still hold; equations inside one
/// vertex keep their values. Throws NotSeparable with the first spanning
/// equation no placement satisfies on its own (or the first spanning one),
/// and BudgetExceeded past `max_placements`.
MarkedSubstitution separability_check(const SeparableDecomposition& d, const Substitution& s,
                                      const EquationSystem& system, std::size_t max_placements = 1'000'000);
/// Deletes the markers and returns to the system's alphabet.
Substitution erase_markers(const MarkedSubstitution& m, const EquationSystem& system);

std::string to_dot(const SolutionGraph& g, const std::string& name = "theta");
std::string to_dot(const SeparableDecomposition& d, const std::string& name = "delta");

}  // namespace mrd

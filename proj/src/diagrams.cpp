#include "mrd/diagrams.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "mrd/error.hpp"

namespace mrd {

namespace {

Error invalid_graph(const std::string& what) { return Error(ErrorCode::InvalidGraph, what); }

struct SubstitutionLess {
  bool operator()(const Substitution& a, const Substitution& b) const { return canonical_less(a, b); }
};
using SubstitutionSet = std::set<Substitution, SubstitutionLess>;

// Value of a side under a substitution, as a positive word.
PositiveWord evaluate(const PositiveWord& side, const std::map<Symbol, PositiveWord>& values,
                      const Alphabet& alphabet) {
  PositiveWord out;
  for (auto x : side) {
    if (alphabet.is_coefficient(x))
      out.push_back(x);
    else
      out += values.at(x);
  }
  return out;
}

bool holds(const Equation& e, const std::map<Symbol, PositiveWord>& values, const Alphabet& alphabet) {
  return evaluate(e.lhs, values, alphabet) == evaluate(e.rhs, values, alphabet);
}

Symbol variable(const EquationSystem& system, const std::string& name) {
  const auto& al = system.alphabet();
  if (!al.contains(name) || !al.is_variable(al.at(name)))
    throw Error(ErrorCode::InvalidArgument, "'" + name + "' is not a variable of the system");
  return al.at(name);
}

std::vector<Symbol> variables_of(const Equation& e, const Alphabet& alphabet) {
  std::set<Symbol> out;
  for (const auto* side : {&e.lhs, &e.rhs})
    for (auto x : *side)
      if (alphabet.is_variable(x)) out.insert(x);
  return {out.begin(), out.end()};
}

}  // namespace

void SolutionGraph::validate() const {
  if (vertices == 0) throw invalid_graph("graph has no vertices");
  if (base_point >= vertices) throw invalid_graph("base point is not a vertex");
  std::set<std::string> seen;
  std::map<std::string, const GraphEdge*> by_label;
  for (const auto& e : edges) {
    if (e.label.empty()) throw invalid_graph("edge without a label");
    if (e.from >= vertices || e.to >= vertices) throw invalid_graph("edge " + e.label + " leaves the graph");
    if (!seen.insert(e.label).second) throw invalid_graph("label " + e.label + " is used twice");
    by_label[e.label] = &e;
  }
  // Connectivity, ignoring directions.
  std::vector<bool> reached(vertices, false);
  std::deque<std::size_t> queue{base_point};
  reached[base_point] = true;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (const auto& e : edges)
      for (auto [a, b] : {std::pair{e.from, e.to}, std::pair{e.to, e.from}})
        if (a == v && !reached[b]) {
          reached[b] = true;
          queue.push_back(b);
        }
  }
  if (std::find(reached.begin(), reached.end(), false) != reached.end()) throw invalid_graph("graph is not connected");
  for (const auto& [var, path] : paths) {
    if (path.empty()) throw invalid_graph("path of " + var + " is empty");
    std::size_t at = base_point;
    for (const auto& label : path) {
      auto it = by_label.find(label);
      if (it == by_label.end()) throw invalid_graph("path of " + var + " uses unknown label " + label);
      if (it->second->from != at) throw invalid_graph("path of " + var + " is not a forward path at " + label);
      at = it->second->to;
    }
    if (at != base_point) throw invalid_graph("path of " + var + " does not return to the base point");
  }
}

std::vector<std::string> SolutionGraph::labels() const {
  std::vector<std::string> out;
  for (const auto& e : edges) out.push_back(e.label);
  return out;
}

Substitution substitute(const SolutionGraph& g, const LabelAssignment& a, const EquationSystem& system) {
  if (g.paths.size() != system.variables().size())
    throw invalid_graph("graph has " + std::to_string(g.paths.size()) + " paths for " +
                        std::to_string(system.variables().size()) + " variables");
  std::map<Symbol, PositiveWord> images;
  for (const auto& [name, path] : g.paths) {
    Symbol v = variable(system, name);
    PositiveWord w;
    for (const auto& label : path) {
      auto it = a.images.find(label);
      if (it == a.images.end()) throw Error(ErrorCode::UnboundLabel, "label " + label + " has no value");
      if (it->second.empty()) throw Error(ErrorCode::InvalidArgument, "label " + label + " has an empty value");
      w += it->second;
    }
    images[v] = std::move(w);
  }
  return Substitution(std::move(images), system.rank());
}

const char* to_string(GraphValidity v) {
  switch (v) {
    case GraphValidity::Formal: return "formal";
    case GraphValidity::Empirical: return "empirically valid";
    case GraphValidity::Invalid: return "invalid";
  }
  return "unknown";
}

GraphVerification verify_graph(const SolutionGraph& g, const EquationSystem& system, std::size_t sample_len) {
  g.validate();
  const auto& al = system.alphabet();
  // Sides as token sequences: labels for variables, names for coefficients.
  // Label names are prefixed so they never collide with coefficient names.
  auto tokens = [&](const PositiveWord& side) {
    std::vector<std::string> out;
    for (auto x : side) {
      if (al.is_coefficient(x)) {
        out.push_back("c:" + al.name(x));
        continue;
      }
      auto it = g.paths.find(al.name(x));
      if (it == g.paths.end()) throw invalid_graph("graph has no path for " + al.name(x));
      for (const auto& l : it->second) out.push_back("l:" + l);
    }
    return out;
  };
  GraphVerification out;
  for (std::size_t i = 0; i < system.equations().size(); ++i) {
    const auto& e = system.equations()[i];
    if (tokens(e.lhs) != tokens(e.rhs)) {
      out.failing_equation = i;
      break;
    }
  }
  if (!out.failing_equation) {
    out.status = GraphValidity::Formal;
    return out;
  }
  auto labels = g.labels();
  auto words = all_words(system.coefficients(), 1, sample_len);
  std::vector<std::size_t> digit(labels.size(), 0);
  for (;;) {
    LabelAssignment a;
    for (std::size_t i = 0; i < labels.size(); ++i) a.images[labels[i]] = words[digit[i]];
    if (!is_solution(substitute(g, a, system), system)) {
      out.status = GraphValidity::Invalid;
      out.counterexample = std::move(a);
      return out;
    }
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == words.size()) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  out.status = GraphValidity::Empirical;
  return out;
}

const char* to_string(TwistGenerator::Kind k) {
  switch (k) {
    case TwistGenerator::Kind::DehnTwist: return "dehn_twist";
    case TwistGenerator::Kind::GeneralizedAbelian: return "generalized_abelian";
    case TwistGenerator::Kind::LabelTwist: return "label_twist";
  }
  return "unknown";
}

Substitution apply_twist(const TwistGenerator& t, const Substitution& s, const EquationSystem& system,
                         std::size_t exponent) {
  const auto& al = system.alphabet();
  Substitution out = s;
  switch (t.kind) {
    case TwistGenerator::Kind::DehnTwist: {
      Symbol target = variable(system, t.target);
      PositiveWord w;
      for (const auto& name : t.word) {
        if (!al.contains(name)) throw Error(ErrorCode::InvalidArgument, "unknown letter " + name + " in twist");
        Symbol x = al.at(name);
        if (al.is_coefficient(x))
          w.push_back(x);
        else
          w += s.at(x);
      }
      if (w.empty()) throw Error(ErrorCode::InvalidArgument, "twisting word is empty");
      out.set(target, t.right ? concat(s.at(target), w) : concat(w, s.at(target)));
      break;
    }
    case TwistGenerator::Kind::GeneralizedAbelian: {
      if (exponent == 0) throw Error(ErrorCode::InvalidArgument, "exponent must be at least 1");
      if (t.variables.empty()) throw Error(ErrorCode::InvalidArgument, "twist names no variables");
      std::optional<PositiveWord> root;
      for (const auto& name : t.variables) {
        auto r = primitive_root(s.at(variable(system, name))).root;
        if (root && *root != r)
          throw Error(ErrorCode::PreconditionViolated, "values of the twisted variables are not in one cyclic subgroup");
        root = r;
      }
      for (const auto& name : t.variables) out.set(variable(system, name), power(*root, exponent));
      break;
    }
    case TwistGenerator::Kind::LabelTwist:
      throw Error(ErrorCode::PreconditionViolated, "label twists act on label assignments");
  }
  if (!is_solution(out, system))
    throw Error(ErrorCode::TwistBreaksSolution,
                std::string(to_string(t.kind)) + " on " + format(s, al) + " gives " + format(out, al));
  return out;
}

LabelAssignment apply_label_twist(const TwistGenerator& t, const LabelAssignment& a) {
  if (t.kind != TwistGenerator::Kind::LabelTwist) throw Error(ErrorCode::InvalidArgument, "not a label twist");
  if (!a.images.count(t.target)) throw Error(ErrorCode::UnboundLabel, "label " + t.target + " has no value");
  PositiveWord w;
  for (const auto& l : t.word) {
    auto it = a.images.find(l);
    if (it == a.images.end()) throw Error(ErrorCode::UnboundLabel, "label " + l + " has no value");
    w += it->second;
  }
  if (w.empty()) throw Error(ErrorCode::InvalidArgument, "label twist word is empty");
  LabelAssignment out = a;
  out.images[t.target] = std::move(w);
  return out;
}

void Resolution::validate() const {
  terminal.validate();
  for (const auto& e : terminal.edges)
    if (!e.separating) throw invalid_graph("terminal edge " + e.label + " is not separating");
}

CoverageReport family_cover_check(const Resolution& r, const EquationSystem& system, const SearchBudget& budget,
                                  std::size_t twist_depth) {
  budget.validate();
  r.validate();
  CoverageReport report;
  report.validity = verify_graph(r.terminal, system).status;

  auto oracle = enumerate_levi(system, budget);
  if (!oracle.complete) throw Error(ErrorCode::BudgetExceeded, "oracle enumeration hit its budget");
  report.oracle_count = oracle.solutions.size();

  std::vector<const TwistGenerator*> twists;
  for (const auto& level : r.levels)
    for (const auto& t : level.twists) twists.push_back(&t);

  struct State {
    std::optional<LabelAssignment> labels;
    Substitution s;
  };
  auto labels = r.terminal.labels();
  auto words = all_words(system.coefficients(), 1, budget.max_len);
  double assignments = 1;
  for (std::size_t i = 0; i < labels.size(); ++i) assignments *= static_cast<double>(words.size());
  if (assignments > static_cast<double>(budget.max_nodes))
    throw Error(ErrorCode::BudgetExceeded, "too many label assignments");

  SubstitutionSet produced;
  std::size_t nodes = 0;
  std::vector<std::size_t> digit(labels.size(), 0);
  for (bool more = !words.empty();;) {
    if (!more) break;
    LabelAssignment a;
    for (std::size_t i = 0; i < labels.size(); ++i) a.images[labels[i]] = words[digit[i]];
    Substitution s0 = substitute(r.terminal, a, system);
    if (is_solution(s0, system)) {
      // Breadth-first over twist words; states are deduplicated per depth.
      SubstitutionSet seen{s0};
      std::vector<State> frontier{{a, s0}};
      produced.insert(s0);
      for (std::size_t depth = 0; depth < twist_depth && !frontier.empty(); ++depth) {
        std::vector<State> next;
        for (const auto& st : frontier)
          for (const auto* t : twists) {
            std::size_t slots = t->kind == TwistGenerator::Kind::GeneralizedAbelian ? budget.max_len : 1;
            for (std::size_t m = 1; m <= slots; ++m) {
              if (++nodes > budget.max_nodes) throw Error(ErrorCode::BudgetExceeded, "twist search hit its budget");
              State out;
              try {
                if (t->kind == TwistGenerator::Kind::LabelTwist) {
                  if (!st.labels) continue;
                  out.labels = apply_label_twist(*t, *st.labels);
                  out.s = substitute(r.terminal, *out.labels, system);
                  if (!is_solution(out.s, system))
                    throw Error(ErrorCode::TwistBreaksSolution, "label twist on " + t->target + " breaks a solution");
                } else {
                  out.s = apply_twist(*t, st.s, system, m);
                }
              } catch (const Error& e) {
                if (e.code() == ErrorCode::PreconditionViolated) continue;
                throw;
              }
              if (!seen.insert(out.s).second) continue;
              produced.insert(out.s);
              next.push_back(std::move(out));
            }
          }
        frontier = std::move(next);
      }
    }
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == words.size()) digit[i++] = 0;
    more = i < digit.size();
  }
  report.produced = produced.size();
  for (const auto& s : oracle.solutions) (produced.count(s) ? report.covered : report.uncovered).push_back(s);
  return report;
}

DiagramReport diagram_check(const MRDiagram& m, const SearchBudget& budget, std::size_t twist_depth) {
  DiagramReport report;
  auto oracle = enumerate_levi(m.system, budget);
  if (!oracle.complete) throw Error(ErrorCode::BudgetExceeded, "oracle enumeration hit its budget");
  report.oracle_count = oracle.solutions.size();
  SubstitutionSet covered;
  for (const auto& r : m.resolutions) {
    report.per_resolution.push_back(family_cover_check(r, m.system, budget, twist_depth));
    covered.insert(report.per_resolution.back().covered.begin(), report.per_resolution.back().covered.end());
  }
  for (const auto& s : oracle.solutions)
    if (!covered.count(s)) report.uncovered.push_back(s);
  return report;
}

void SeparableDecomposition::validate(const EquationSystem& system) const {
  const auto& al = system.alphabet();
  if (vertices.empty()) throw invalid_graph("decomposition has no vertices");
  std::set<std::string> placed, labels;
  for (const auto& v : vertices)
    for (const auto& name : v) {
      variable(system, name);
      if (!placed.insert(name).second) throw invalid_graph("variable " + name + " sits at two vertices");
    }
  for (auto x : system.variables())
    if (!placed.count(al.name(x))) throw invalid_graph("variable " + al.name(x) + " sits at no vertex");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.from >= vertices.size() || e.to >= vertices.size() || e.from == e.to)
      throw invalid_graph("edge " + std::to_string(i) + " does not join two vertices");
    std::size_t want = base_on_edge && base == i ? 2 : 1;
    if (e.labels.size() != want)
      throw invalid_graph("edge " + std::to_string(i) + " needs " + std::to_string(want) + " label(s)");
    for (const auto& l : e.labels) {
      if (l.empty() || kind_of_name(l) != SymbolKind::Coefficient)
        throw invalid_graph("label '" + l + "' is not a lowercase name");
      if (al.contains(l)) throw invalid_graph("label " + l + " clashes with the alphabet");
      if (!labels.insert(l).second) throw invalid_graph("label " + l + " is used twice");
    }
  }
  if (base_on_edge ? base >= edges.size() : base >= vertices.size()) throw invalid_graph("base point is out of range");
  if (edges.size() + 1 != vertices.size()) throw invalid_graph("decomposition is not a tree");
  crossings();  // connectivity and orientation
}

std::vector<std::vector<std::string>> SeparableDecomposition::crossings() const {
  std::vector<std::optional<std::vector<std::string>>> out(vertices.size());
  std::deque<std::size_t> queue;
  if (base_on_edge) {
    const auto& e = edges.at(base);
    out[e.from] = std::vector<std::string>{e.labels.at(0)};
    out[e.to] = std::vector<std::string>{e.labels.at(1)};
    queue = {e.from, e.to};
  } else {
    out.at(base) = std::vector<std::string>{};
    queue = {base};
  }
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      if (base_on_edge && i == base) continue;
      if (e.to == v && !out[e.from])
        throw invalid_graph("edge " + e.labels.front() + " points towards the base point");
      if (e.from != v || out[e.to]) continue;
      auto path = *out[v];
      path.push_back(e.labels.front());
      out[e.to] = std::move(path);
      queue.push_back(e.to);
    }
  }
  std::vector<std::vector<std::string>> result;
  for (auto& p : out) {
    if (!p) throw invalid_graph("decomposition is not connected");
    result.push_back(std::move(*p));
  }
  return result;
}

MarkedSubstitution separability_check(const SeparableDecomposition& d, const Substitution& s,
                                      const EquationSystem& system, std::size_t max_placements) {
  d.validate(system);
  if (!is_solution(s, system)) throw Error(ErrorCode::InvalidArgument, "input is not a solution");
  const auto& al = system.alphabet();

  MarkedSubstitution out;
  out.alphabet = al;
  for (const auto& e : d.edges)
    for (const auto& l : e.labels) out.markers[l] = out.alphabet.add_coefficient(l);

  auto paths = d.crossings();
  std::map<Symbol, std::vector<Symbol>> crossed;  // markers a variable's value must carry, in order
  std::map<Symbol, std::size_t> vertex_of;
  for (std::size_t v = 0; v < d.vertices.size(); ++v)
    for (const auto& name : d.vertices[v]) {
      Symbol x = al.at(name);
      vertex_of[x] = v;
      for (const auto& l : paths[v]) crossed[x].push_back(out.markers.at(l));
    }

  std::vector<std::size_t> spanning;
  for (std::size_t i = 0; i < system.equations().size(); ++i) {
    std::set<std::size_t> at;
    for (auto x : variables_of(system.equations()[i], al)) at.insert(vertex_of.at(x));
    if (at.size() > 1) spanning.push_back(i);
  }

  // Inserts markers at nondecreasing positions of the value.
  auto mark = [](const PositiveWord& w, const std::vector<Symbol>& markers, const std::vector<std::size_t>& pos) {
    PositiveWord r;
    std::size_t m = 0;
    for (std::size_t i = 0; i <= w.size(); ++i) {
      while (m < markers.size() && pos[m] == i) r.push_back(markers[m++]);
      if (i < w.size()) r.push_back(w[i]);
    }
    return r;
  };

  // Searches placements for the variables of `equations`; returns the values.
  auto search = [&](const std::vector<std::size_t>& equations) -> std::optional<std::map<Symbol, PositiveWord>> {
    std::set<Symbol> involved;
    for (auto i : equations)
      for (auto x : variables_of(system.equations()[i], al)) involved.insert(x);
    std::vector<Symbol> vars;
    for (auto x : involved)
      if (!crossed[x].empty()) vars.push_back(x);
    std::map<Symbol, PositiveWord> values;
    for (const auto& [x, w] : s.images()) values[x] = mark(w, crossed[x], std::vector<std::size_t>(crossed[x].size(), 0));
    std::size_t tried = 0;
    std::function<bool(std::size_t)> place = [&](std::size_t k) -> bool {
      if (k == vars.size()) {
        if (++tried > max_placements) throw Error(ErrorCode::BudgetExceeded, "too many marker placements");
        for (auto i : equations)
          if (!holds(system.equations()[i], values, al)) return false;
        return true;
      }
      Symbol x = vars[k];
      const auto& w = s.at(x);
      const auto& markers = crossed[x];
      std::vector<std::size_t> pos(markers.size(), 0);
      for (;;) {
        values[x] = mark(w, markers, pos);
        if (place(k + 1)) return true;
        // Next nondecreasing tuple with entries <= |w|.
        std::size_t j = pos.size();
        while (j > 0 && pos[j - 1] == w.size()) --j;
        if (j == 0) return false;
        ++pos[j - 1];
        for (std::size_t t = j; t < pos.size(); ++t) pos[t] = pos[j - 1];
      }
    };
    if (place(0)) return values;
    return std::nullopt;
  };

  auto found = search(spanning);
  if (!found) {
    for (auto i : spanning)
      if (!search({i})) throw NotSeparable(i);
    throw NotSeparable(spanning.front());
  }
  out.marked = Substitution(std::move(*found), al.rank() + out.markers.size());
  return out;
}

Substitution erase_markers(const MarkedSubstitution& m, const EquationSystem& system) {
  std::set<Symbol> markers;
  for (const auto& [l, x] : m.markers) markers.insert(x);
  std::map<Symbol, PositiveWord> images;
  for (const auto& [v, w] : m.marked.images()) {
    PositiveWord r;
    for (auto x : w)
      if (!markers.count(x)) r.push_back(x);
    images[v] = std::move(r);
  }
  return Substitution(std::move(images), system.rank());
}

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::string to_dot(const SolutionGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n";
  for (std::size_t v = 0; v < g.vertices; ++v)
    out << "  v" << v << (v == g.base_point ? " [shape=doublecircle]" : " [shape=circle]") << ";\n";
  for (const auto& e : g.edges) {
    out << "  v" << e.from << " -> v" << e.to << " [label=" << quoted(e.label);
    if (e.separating) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const SeparableDecomposition& d, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n";
  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    std::string vars;
    for (const auto& x : d.vertices[v]) vars += (vars.empty() ? "" : " ") + x;
    out << "  v" << v << " [label=" << quoted(vars.empty() ? "1" : vars);
    if (!d.base_on_edge && d.base == v) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    std::string label;
    for (const auto& l : e.labels) label += (label.empty() ? "" : "|") + l;
    out << "  v" << e.from << " -> v" << e.to << " [label=" << quoted(label) << ", style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace mrd

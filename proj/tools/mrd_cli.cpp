#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "mrd/error.hpp"
#include "mrd/json_io.hpp"
#include "mrd/oracle.hpp"
#include "mrd/parse.hpp"

using namespace mrd;

namespace {

enum Exit { kOk = 0, kValidation = 2, kBudget = 3, kCoverage = 4 };

struct Options {
  std::size_t max_len = 4;
  std::size_t max_solutions = 1'000'000;
  std::size_t steps = 100;
  std::size_t twist_depth = 2;
  unsigned long seed = 20240611;
  bool json = false;
  bool exhaustive = false;
  std::string dot;
  std::string assign;
  std::string input;
  std::string system;
};

SearchBudget budget(const Options& o) {
  SearchBudget b;
  b.max_len = o.max_len;
  b.max_solutions = o.max_solutions;
  b.validate();
  return b;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

void write_dot(const Options& o, const std::string& text) {
  if (o.dot.empty()) return;
  std::ofstream out(o.dot);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.dot);
  out << text;
}

// A resolution file holds its graph under "terminal"; a bare graph is accepted too.
SolutionGraph graph_file(const std::string& path) {
  auto j = load_json(path);
  return j.contains("terminal") ? resolution_from_json(j).terminal : solution_graph_from_json(j);
}

int solve(const Options& o) {
  auto system = load_equations(o.input);
  auto b = budget(o);
  auto set = o.exhaustive ? enumerate_exhaustive(system, b) : enumerate_levi(system, b);
  if (o.json) {
    emit({{"solutions", to_json(set.solutions, system.alphabet())}, {"count", set.solutions.size()},
          {"complete", set.complete}});
  } else {
    std::cout << "solutions: " << set.solutions.size() << (set.complete ? "" : " (incomplete)") << "\n";
    for (const auto& s : set.solutions) std::cout << "  " << format(s, system.alphabet()) << "\n";
  }
  return set.complete ? kOk : kBudget;
}

int basis(const Options& o) {
  auto inst = lattice_from_json(load_json(o.input));
  auto pb = positive_basis(inst, o.steps);
  if (o.json) {
    emit(to_json(pb));
  } else {
    std::cout << "steps: " << pb.steps << "\nbasis:\n" << pb.change_of_basis << "\nexpressions:\n" << pb.expressions << "\n";
  }
  return kOk;
}

int band_run(const Options& o) {
  auto bs = band_system_from_json(load_json(o.input));
  auto trace = rips_run(bs, o.steps);
  std::size_t chi_violations = 0, length_violations = 0;
  for (const auto& r : trace.records) chi_violations += r.chi_after < r.chi_before;
  Rational last = bs.total_length();
  for (auto end : trace.round_ends) {
    const auto& r = trace.records[end];
    if (r.move != MoveKind::Terminal && r.move != MoveKind::TerminalRational) length_violations += !(r.total_length < last);
    last = r.total_length;
  }
  if (o.json) {
    Json records = Json::array();
    for (const auto& r : trace.records) records.push_back(to_json(r));
    emit({{"trace", records},
          {"rounds", trace.round_ends.size()},
          {"terminal", trace.terminal},
          {"chi_violations", chi_violations},
          {"length_violations", length_violations},
          {"final", to_json(trace.systems.back())}});
  } else {
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
      const auto& r = trace.records[i];
      std::cout << i << "  " << to_string(r.move) << "  " << r.args << "  chi " << r.chi_before << " -> "
                << r.chi_after << "  length " << to_string(r.total_length) << "\n";
    }
    std::cout << "moves: " << trace.records.size() << "\nrounds: " << trace.round_ends.size()
              << "\nterminal: " << (trace.terminal ? "yes" : "no") << "\nchi violations: " << chi_violations
              << "\nlength violations: " << length_violations << "\n";
  }
  if (chi_violations || length_violations) return kValidation;
  return trace.terminal ? kOk : kBudget;
}

// Seeded sample points, compared orbit by orbit before and after every move.
int band_check(const Options& o) {
  auto bs = band_system_from_json(load_json(o.input));
  std::mt19937_64 rng(o.seed);
  std::vector<Rational> samples;
  for (int i = 0; i < 200; ++i) {
    const auto& c = bs.components()[rng() % bs.components().size()];
    Rational t(static_cast<long>(rng() % 10006 + 1), 10007L);
    t.canonicalize();
    samples.push_back(Rational(c.lo + t * c.length()));
  }
  auto graph = associated_graph(bs);
  std::size_t moves = 0, violations = 0;
  BandSystem current = bs;
  for (; moves < o.steps; ++moves) {
    auto step = rips_step(current);
    if (step.record.move == MoveKind::Terminal || step.record.move == MoveKind::TerminalRational) break;
    std::vector<Rational> kept, mapped;
    for (const auto& x : samples)
      if (auto y = step.transport.apply(x)) {
        kept.push_back(x);
        mapped.push_back(*y);
      }
    violations += orbit_partition(current, kept, 6) != orbit_partition(step.system, mapped, 6);
    current = std::move(step.system);
    samples = std::move(mapped);
  }
  auto stationary = find_stationary_word(bs, 6);
  if (o.json) {
    Json profile = Json::array();
    for (const auto& seg : coverage_profile(bs))
      profile.push_back({{"segment", to_json(seg.segment)}, {"multiplicity", seg.multiplicity}});
    emit({{"pairs", bs.pair_count()},
          {"chi", graph.euler_characteristic()},
          {"coverage", profile},
          {"stationary_word", stationary ? Json(stationary->word) : Json()},
          {"moves_checked", moves},
          {"orbit_violations", violations}});
  } else {
    std::cout << "pairs: " << bs.pair_count() << "\nchi: " << graph.euler_characteristic() << "\ncoverage:\n";
    for (const auto& seg : coverage_profile(bs))
      std::cout << "  [" << to_string(seg.segment.lo) << ", " << to_string(seg.segment.hi) << "] x"
                << seg.multiplicity << "\n";
    std::cout << "stationary word: ";
    if (stationary)
      for (int id : stationary->word) std::cout << id << " ";
    else
      std::cout << "none";
    std::cout << "\nmoves checked: " << moves << "\norbit violations: " << violations << "\n";
  }
  return violations ? kValidation : kOk;
}

int graph_subst(const Options& o) {
  auto system = load_equations(o.system);
  auto g = graph_file(o.input);
  auto s = substitute(g, parse_assignment(o.assign, system), system);
  auto v = verify_graph(g, system);
  bool solves = is_solution(s, system);
  write_dot(o, to_dot(g));
  if (o.json) {
    emit({{"substitution", to_json(s, system.alphabet())}, {"solution", solves}, {"graph", to_string(v.status)}});
  } else {
    std::cout << format(s, system.alphabet()) << "\nsolution: " << (solves ? "yes" : "no")
              << "\ngraph: " << to_string(v.status) << "\n";
  }
  return solves ? kOk : kValidation;
}

void print_uncovered(const std::vector<Substitution>& v, const Alphabet& al) {
  std::cout << "uncovered: " << v.size() << "\n";
  for (const auto& s : v) std::cout << "  " << format(s, al) << "\n";
}

int graph_cover(const Options& o) {
  auto system = load_equations(o.system);
  auto r = resolution_from_json(load_json(o.input));
  auto report = family_cover_check(r, system, budget(o), o.twist_depth);
  write_dot(o, to_dot(r.terminal));
  if (o.json) {
    emit(to_json(report, system.alphabet()));
  } else {
    std::cout << "graph: " << to_string(report.validity) << "\noracle: " << report.oracle_count
              << "\ncovered: " << report.covered.size() << "\n";
    print_uncovered(report.uncovered, system.alphabet());
  }
  return report.uncovered.empty() ? kOk : kCoverage;
}

int diagram_check_cmd(const Options& o) {
  auto m = load_diagram(o.input);
  auto report = diagram_check(m, budget(o), o.twist_depth);
  if (o.json) {
    emit(to_json(report, m.system.alphabet()));
  } else {
    std::cout << "oracle: " << report.oracle_count << "\n";
    for (std::size_t i = 0; i < m.resolutions.size(); ++i)
      std::cout << "  " << m.resolutions[i].name << ": covered " << report.per_resolution[i].covered.size() << " ("
                << to_string(report.per_resolution[i].validity) << ")\n";
    print_uncovered(report.uncovered, m.system.alphabet());
  }
  return report.uncovered.empty() ? kOk : kCoverage;
}

// One substitution with --assign, otherwise every oracle solution.
int separability(const Options& o) {
  auto [system, d] = load_decomposition(o.input);
  write_dot(o, to_dot(d));
  std::vector<Substitution> targets;
  if (!o.assign.empty()) {
    targets.push_back(parse_substitution(o.assign, system));
  } else {
    auto set = enumerate_levi(system, budget(o));
    if (!set.complete) throw Error(ErrorCode::BudgetExceeded, "oracle did not finish");
    targets = set.solutions;
  }
  Json rows = Json::array();
  std::size_t failures = 0;
  for (const auto& s : targets) {
    Json row{{"substitution", format(s, system.alphabet())}};
    try {
      auto m = separability_check(d, s, system);
      row["separable"] = true;
      row["marked"] = to_json(m);
    } catch (const NotSeparable& e) {
      row["separable"] = false;
      row["equation"] = e.equation();
      ++failures;
    }
    rows.push_back(row);
  }
  if (o.json) {
    emit({{"results", rows}, {"not_separable", failures}});
  } else {
    for (const auto& row : rows) {
      std::cout << row["substitution"].get<std::string>() << "  ";
      if (row["separable"].get<bool>())
        std::cout << "separable  " << row["marked"]["marked"].dump() << "\n";
      else
        std::cout << "not separable (equation " << row["equation"].get<std::size_t>() << ")\n";
    }
    std::cout << "not separable: " << failures << " of " << rows.size() << "\n";
  }
  return failures ? kValidation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Makanin-Razborov diagram tools over free semigroups", "mrd"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--max-len", o.max_len, "longest image length searched")->check(CLI::PositiveNumber);
  app.add_option("--max-solutions", o.max_solutions, "oracle solution cap")->check(CLI::PositiveNumber);
  app.add_option("--steps", o.steps, "move budget (band-run, band-check) or step budget (basis)");
  app.add_option("--twist-depth", o.twist_depth, "longest twist word applied");
  app.add_option("--seed", o.seed, "sample seed");
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("--dot", o.dot, "write the graph in DOT to this file");

  auto* solve_cmd = app.add_subcommand("solve", "list oracle solutions of an equation file");
  solve_cmd->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  solve_cmd->add_flag("--exhaustive", o.exhaustive, "direct product enumeration instead of prefix splitting");
  auto* basis_cmd = app.add_subcommand("basis", "positive basis of a lattice instance");
  basis_cmd->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  auto* run_cmd = app.add_subcommand("band-run", "run the move machine on a band system");
  run_cmd->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  auto* check_cmd = app.add_subcommand("band-check", "coverage, stationary words and orbit checks");
  check_cmd->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  auto* subst_cmd = app.add_subcommand("graph-subst", "substitute a label assignment into a solution graph");
  subst_cmd->add_option("graph", o.input)->required()->check(CLI::ExistingFile);
  subst_cmd->add_option("system", o.system)->required()->check(CLI::ExistingFile);
  subst_cmd->add_option("--assign", o.assign, "labels, e.g. u=ab,v=b")->required();
  auto* cover_cmd = app.add_subcommand("graph-cover", "coverage of one resolution");
  cover_cmd->add_option("resolution", o.input)->required()->check(CLI::ExistingFile);
  cover_cmd->add_option("system", o.system)->required()->check(CLI::ExistingFile);
  auto* diagram_cmd = app.add_subcommand("diagram-check", "coverage of a bundle of resolutions");
  diagram_cmd->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  auto* sep_cmd = app.add_subcommand("separability", "marker placement for a decomposition");
  sep_cmd->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  sep_cmd->add_option("--assign", o.assign, "one substitution, e.g. X=a Y=aa; default: all oracle solutions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*solve_cmd) return solve(o);
    if (*basis_cmd) return basis(o);
    if (*run_cmd) return band_run(o);
    if (*check_cmd) return band_check(o);
    if (*subst_cmd) return graph_subst(o);
    if (*cover_cmd) return graph_cover(o);
    if (*diagram_cmd) return diagram_check_cmd(o);
    if (*sep_cmd) return separability(o);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::BudgetExceeded || e.code() == ErrorCode::StepBudgetExceeded ? kBudget : kValidation;
  }
  return kValidation;
}

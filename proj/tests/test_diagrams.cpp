#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <optional>
#include <set>

#include "mrd/error.hpp"
#include "mrd/parse.hpp"
#include "support.hpp"

using namespace mrd;
using mrd::testing::data_path;

namespace {

std::optional<ErrorCode> code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

EquationSystem sys(const char* text) { return parse_equations(text); }

Resolution resolution(const std::string& name) { return resolution_from_json(load_json(data_path("diagrams/" + name))); }

std::string value(const Substitution& s, const EquationSystem& system, const char* var) {
  return format(s.at(system.alphabet().at(var)), system.alphabet());
}

// X = uv, Y = vu, Z = (uv)^k u with u, v nonempty.
bool conjugate_family(const std::string& x, const std::string& y, const std::string& z) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    std::string u = x.substr(0, i), v = x.substr(i);
    if (y != v + u) continue;
    for (std::string w = u; w.size() <= z.size(); w = x + w)
      if (w == z) return true;
  }
  return false;
}

std::set<std::string> keys(const std::vector<Substitution>& v, const Alphabet& al) {
  std::set<std::string> out;
  for (const auto& s : v) out.insert(format(s, al));
  return out;
}

}  // namespace

TEST_CASE("substitute") {
  auto conj = sys("alphabet: a b\nXZ = ZY");
  auto g = resolution("conj_a.json").terminal;
  auto s = substitute(g, parse_assignment("u=a,v=b", conj), conj);
  CHECK(value(s, conj, "X") == "ab");
  CHECK(value(s, conj, "Y") == "ba");
  CHECK(value(s, conj, "Z") == "a");
  CHECK(is_solution(s, conj));

  s = substitute(g, parse_assignment("u=ab,v=ba", conj), conj);
  CHECK(value(s, conj, "X") == "abba");
  CHECK(value(s, conj, "Y") == "baab");
  CHECK(value(s, conj, "Z") == "ab");
  CHECK(is_solution(s, conj));

  auto commute = sys("alphabet: a b\nXY = YX");
  auto loop = resolution("commute_loop.json").terminal;
  for (const auto& w : all_words(commute.coefficients(), 1, 3)) {
    LabelAssignment a{{{"w", w}}};
    CHECK(is_solution(substitute(loop, a, commute), commute));
  }

  CHECK(code_of([&] { substitute(g, parse_assignment("u=a", conj), conj); }) == ErrorCode::UnboundLabel);
}

TEST_CASE("graph validation") {
  SolutionGraph g;
  g.vertices = 2;
  g.edges = {{"u", 0, 1, true}, {"v", 1, 0, true}};
  g.paths = {{"X", {"u", "v"}}};
  CHECK_NOTHROW(g.validate());
  g.paths = {{"X", {"v", "u"}}};
  CHECK(code_of([&] { g.validate(); }) == ErrorCode::InvalidGraph);
  g.paths = {{"X", {"u"}}};
  CHECK(code_of([&] { g.validate(); }) == ErrorCode::InvalidGraph);
  g.edges.push_back({"u", 0, 0, true});
  CHECK(code_of([&] { g.validate(); }) == ErrorCode::InvalidGraph);
  SolutionGraph apart;
  apart.vertices = 2;
  CHECK(code_of([&] { apart.validate(); }) == ErrorCode::InvalidGraph);

  auto r = resolution("conj_a.json");
  r.terminal.edges[0].separating = false;
  CHECK(code_of([&] { r.validate(); }) == ErrorCode::InvalidGraph);
}

TEST_CASE("formal verification") {
  auto conj = sys("alphabet: a b\nXZ = ZY");
  CHECK(verify_graph(resolution("conj_a.json").terminal, conj).status == GraphValidity::Formal);
  auto broken = verify_graph(resolution("conj_broken.json").terminal, conj);
  CHECK(broken.status == GraphValidity::Invalid);
  CHECK(broken.failing_equation == std::size_t{0});
  REQUIRE(broken.counterexample);
  CHECK_FALSE(is_solution(substitute(resolution("conj_broken.json").terminal, *broken.counterexample, conj), conj));

  // Over one letter every pair commutes, so independent loops pass every
  // sample without being an identity.
  auto unary = sys("alphabet: a\nXY = YX");
  CHECK(verify_graph(resolution("commute_broken.json").terminal, unary).status == GraphValidity::Empirical);
}

TEST_CASE("twists") {
  auto conj = sys("alphabet: a b\nXZ = ZY");
  auto s = parse_substitution("X=ab Y=ba Z=a", conj);
  TwistGenerator zt{TwistGenerator::Kind::DehnTwist, "Z", {"X"}, false, {}};
  auto t = apply_twist(zt, s, conj);
  CHECK(value(t, conj, "Z") == "aba");
  CHECK(is_solution(t, conj));

  auto commute = sys("alphabet: a b\nXY = YX");
  TwistGenerator ga{TwistGenerator::Kind::GeneralizedAbelian, "", {}, false, {"Y"}};
  auto c = apply_twist(ga, parse_substitution("X=a Y=aa", commute), commute, 5);
  CHECK(value(c, commute, "Y") == "aaaaa");

  TwistGenerator wrong{TwistGenerator::Kind::DehnTwist, "Z", {"Y"}, false, {}};
  CHECK(code_of([&] { apply_twist(wrong, s, conj); }) == ErrorCode::TwistBreaksSolution);
  TwistGenerator both{TwistGenerator::Kind::GeneralizedAbelian, "", {}, false, {"X", "Y"}};
  CHECK(code_of([&] { apply_twist(both, s, conj); }) == ErrorCode::PreconditionViolated);

  TwistGenerator lt{TwistGenerator::Kind::LabelTwist, "u", {"u", "v", "u"}, false, {}};
  auto g = resolution("conj_a.json").terminal;
  auto a = apply_label_twist(lt, parse_assignment("u=a,v=b", conj));
  auto ls = substitute(g, a, conj);
  CHECK(value(ls, conj, "Z") == "aba");
  CHECK(is_solution(ls, conj));
}

TEST_CASE("bundled twists keep solutions at bound 4") {
  SearchBudget b;
  b.max_len = 4;
  for (auto [file, text] : {std::pair{"conj_a.json", "alphabet: a b\nXZ = ZY"},
                            std::pair{"conj_b.json", "alphabet: a b\nXZ = ZY"},
                            std::pair{"commute_loop.json", "alphabet: a b\nXY = YX"}}) {
    auto system = sys(text);
    auto r = resolution(file);
    for (const auto& s : enumerate_levi(system, b).solutions)
      for (const auto& level : r.levels)
        for (const auto& t : level.twists)
          for (std::size_t m = 1; m <= 4; ++m) {
            try {
              CHECK(is_solution(apply_twist(t, s, system, m), system));
            } catch (const Error& e) {
              CHECK(e.code() == ErrorCode::PreconditionViolated);
            }
          }
  }
}

TEST_CASE("conjugacy coverage") {
  auto m = load_diagram(data_path("diagrams/conj.mrd"));
  SearchBudget b;
  b.max_len = 5;
  auto report = diagram_check(m, b, 4);
  CHECK(report.uncovered.empty());
  CHECK(report.oracle_count == enumerate_exhaustive(m.system, b).solutions.size());

  // The uv/vu family alone misses exactly the solutions outside it, all of
  // which have X = Y.
  const auto& al = m.system.alphabet();
  auto a = family_cover_check(m.resolutions[0], m.system, b, 4);
  CHECK(a.validity == GraphValidity::Formal);
  std::set<std::string> outside;
  for (const auto& s : enumerate_exhaustive(m.system, b).solutions) {
    auto x = value(s, m.system, "X"), y = value(s, m.system, "Y"), z = value(s, m.system, "Z");
    if (!conjugate_family(x, y, z)) {
      outside.insert(format(s, al));
      CHECK(x == y);
    }
  }
  CHECK(keys(a.uncovered, al) == outside);
  CHECK_FALSE(outside.empty());

  auto broken = family_cover_check(resolution("conj_broken.json"), m.system, b, 4);
  CHECK(broken.validity == GraphValidity::Invalid);
  CHECK(broken.covered.size() < a.covered.size());
  CHECK(broken.covered.size() < broken.oracle_count);
}

TEST_CASE("commutation coverage") {
  auto m = load_diagram(data_path("diagrams/commute.mrd"));
  SearchBudget b;
  b.max_len = 6;
  auto report = diagram_check(m, b, 4);
  CHECK(report.uncovered.empty());
  for (const auto& s : enumerate_levi(m.system, b).solutions)
    CHECK(commutation_witness(s.at(m.system.alphabet().at("X")), s.at(m.system.alphabet().at("Y"))));

  // Independent loops are not an identity, yet every commuting pair is one
  // of their own assignments, so the intersection still covers everything.
  b.max_len = 4;
  auto loose = family_cover_check(resolution("commute_broken.json"), m.system, b, 0);
  CHECK(loose.validity == GraphValidity::Invalid);
  CHECK(loose.uncovered.empty());

  // Without its twists the single loop only reaches (w, ww).
  auto rigid = family_cover_check(m.resolutions[0], m.system, b, 0);
  CHECK_FALSE(rigid.uncovered.empty());
  for (const auto& s : rigid.covered) CHECK(value(s, m.system, "Y").size() == 2 * value(s, m.system, "X").size());

  auto none = diagram_check(load_diagram(data_path("diagrams/empty.mrd")), b, 2);
  CHECK(none.uncovered.size() == none.oracle_count);
  CHECK(none.oracle_count > 0);
}

TEST_CASE("coverage grows with depth and length") {
  auto system = sys("alphabet: a b\nXZ = ZY");
  auto r = resolution("conj_a.json");
  std::set<std::string> previous;
  for (std::size_t depth = 0; depth <= 3; ++depth) {
    SearchBudget b;
    b.max_len = 4;
    auto covered = keys(family_cover_check(r, system, b, depth).covered, system.alphabet());
    CHECK(std::includes(covered.begin(), covered.end(), previous.begin(), previous.end()));
    previous = covered;
  }
  previous.clear();
  for (std::size_t len = 2; len <= 5; ++len) {
    SearchBudget b;
    b.max_len = len;
    auto covered = keys(family_cover_check(r, system, b, 2).covered, system.alphabet());
    CHECK(std::includes(covered.begin(), covered.end(), previous.begin(), previous.end()));
    previous = covered;
  }
}

TEST_CASE("budget") {
  auto m = load_diagram(data_path("diagrams/conj.mrd"));
  SearchBudget b;
  b.max_len = 4;
  b.max_solutions = 10;
  CHECK(code_of([&] { diagram_check(m, b, 2); }) == ErrorCode::BudgetExceeded);
}

TEST_CASE("separability examples") {
  auto [block, d] = load_decomposition(data_path("diagrams/block_split.sep"));
  auto s = parse_substitution("X=aa Y=b", block);
  auto marked = separability_check(d, s, block);
  CHECK(erase_markers(marked, block) == s);
  CHECK(format(marked.marked.at(block.alphabet().at("Y")), marked.alphabet) == "mb");
  CHECK(format(marked.marked.at(block.alphabet().at("X")), marked.alphabet) == "aa");

  auto [commute, split] = load_decomposition(data_path("diagrams/commute_split.sep"));
  auto c = parse_substitution("X=a Y=aa", commute);
  try {
    separability_check(split, c, commute);
    FAIL("expected NotSeparable");
  } catch (const NotSeparable& e) {
    CHECK(e.equation() == 0);
  }
  auto mid = load_decomposition(data_path("diagrams/commute_split_mid.sep")).second;
  CHECK(code_of([&] { separability_check(mid, c, commute); }) == ErrorCode::NotSeparable);

  auto whole = load_decomposition(data_path("diagrams/commute_whole.sep")).second;
  auto vac = separability_check(whole, c, commute);
  CHECK(vac.markers.empty());
  CHECK(erase_markers(vac, commute) == c);
}

TEST_CASE("separability agrees with brute-force marker insertion at bound 4") {
  SearchBudget b;
  b.max_len = 4;
  // A decomposition separates a solution when some insertion of one marker
  // into the far-side variable keeps every equation spanning both vertices.
  auto brute = [](const std::string& x, const std::string& y, bool spanning_commutation) {
    if (!spanning_commutation) return true;
    for (std::size_t i = 0; i <= y.size(); ++i) {
      std::string ym = y.substr(0, i) + "#" + y.substr(i);
      if (x + ym == ym + x) return true;
    }
    return false;
  };
  for (auto [file, spans] : {std::pair{"block_split.sep", false}, std::pair{"commute_split.sep", true}}) {
    auto [system, d] = load_decomposition(data_path(std::string("diagrams/") + file));
    std::size_t separable = 0, total = 0;
    for (const auto& s : enumerate_levi(system, b).solutions) {
      ++total;
      bool expected = brute(value(s, system, "X"), value(s, system, "Y"), spans);
      bool got = true;
      try {
        auto m = separability_check(d, s, system);
        CHECK(erase_markers(m, system) == s);
        CHECK(is_solution(erase_markers(m, system), system));
      } catch (const NotSeparable&) {
        got = false;
      }
      CHECK(got == expected);
      separable += got;
    }
    CHECK(total > 0);
    CHECK(separable == (spans ? 0 : total));
  }
}

TEST_CASE("decomposition validation") {
  auto system = sys("alphabet: a b\nXY = YX");
  SeparableDecomposition d;
  d.vertices = {{"X"}, {"Y"}};
  d.edges = {{0, 1, {"a"}}};
  CHECK(code_of([&] { d.validate(system); }) == ErrorCode::InvalidGraph);
  d.edges = {{1, 0, {"m"}}};
  CHECK(code_of([&] { d.validate(system); }) == ErrorCode::InvalidGraph);
  d.edges = {{0, 1, {"m"}}};
  d.vertices = {{"X"}, {"X"}};
  CHECK(code_of([&] { d.validate(system); }) == ErrorCode::InvalidGraph);
  d.vertices = {{"X"}, {}};
  CHECK(code_of([&] { d.validate(system); }) == ErrorCode::InvalidGraph);
}

TEST_CASE("json round trip") {
  for (auto file : {"conj_a.json", "conj_b.json", "commute_loop.json", "conj_broken.json"}) {
    auto r = resolution(file);
    CHECK(to_json(resolution_from_json(to_json(r))).dump() == to_json(r).dump());
  }
  auto dot = to_dot(resolution("conj_a.json").terminal);
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(code_of([] { twist_from_json(Json{{"kind", "spin"}}); }) == ErrorCode::InvalidArgument);
}

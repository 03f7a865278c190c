#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mrd/error.hpp"
#include "mrd/oracle.hpp"
#include "mrd/parse.hpp"
#include "mrd/systems.hpp"

using namespace mrd;

namespace {

Substitution subst(const Alphabet& a, std::initializer_list<std::pair<const char*, const char*>> m) {
  std::map<Symbol, PositiveWord> images;
  for (auto [v, w] : m) images.emplace(a.at(v), parse_positive_word(w, a));
  return Substitution(std::move(images), a.rank());
}

// Letter-by-letter comparison of both sides, independent of apply().
bool solves_by_hand(const Substitution& s, const EquationSystem& sys) {
  const auto& a = sys.alphabet();
  auto expand = [&](const PositiveWord& w) {
    std::string out;
    for (Symbol x : w) out += a.is_coefficient(x) ? a.name(x) : format(s.at(x), a);
    return out;
  };
  for (const auto& e : sys.equations())
    if (expand(e.lhs) != expand(e.rhs)) return false;
  return true;
}

}  // namespace

TEST_CASE("apply") {
  auto sys = parse_equations("alphabet: a b\nXY = YX\n");
  Alphabet a = sys.alphabet();
  a.add_variable("W");
  auto s = subst(a, {{"X", "ab"}, {"Y", "abab"}});
  CHECK(format(apply(s, parse_positive_word("Xa", a), a), a) == "aba");
  CHECK(format(apply(s, parse_positive_word("XY", a), a), a) == "ababab");
  auto t = subst(a, {{"X", "a"}});
  CHECK(format(apply(t, parse_group_word("X'aX", a), a), a) == "a");
  CHECK_THROWS_AS(apply(t, parse_positive_word("XW", a), a), UnboundVariable);
  // Homomorphism property.
  for (const char* u : {"Xa", "YX", "bXY"})
    for (const char* v : {"X", "aY", "YYb"}) {
      auto pu = parse_positive_word(u, a), pv = parse_positive_word(v, a);
      CHECK(apply(s, concat(pu, pv), a) == multiply(apply(s, pu, a), apply(s, pv, a)));
    }
}

TEST_CASE("is_solution") {
  auto commute = parse_equations("alphabet: a b\nXY = YX\n");
  const auto& a = commute.alphabet();
  CHECK(is_solution(subst(a, {{"X", "ab"}, {"Y", "abab"}}), commute));
  CHECK_FALSE(is_solution(subst(a, {{"X", "ab"}, {"Y", "ba"}}), commute));
  CHECK_THROWS_AS(is_solution(subst(a, {{"X", "ab"}}), commute), UnboundVariable);

  auto conj = parse_equations("alphabet: a b\nXZ = ZY\n");
  auto s = subst(conj.alphabet(), {{"X", "ab"}, {"Y", "ba"}, {"Z", "aba"}});
  CHECK(solves_by_hand(s, conj));
  CHECK(is_solution(s, conj));
}

TEST_CASE("is_solution agrees with hand expansion and is rename invariant") {
  auto sys = parse_equations("alphabet: a b\nXZ = ZY\n");
  auto renamed = parse_equations("alphabet: a b\nPR = RQ\n");
  const auto& a = sys.alphabet();
  const auto& b = renamed.alphabet();
  auto words = all_words(a.coefficients(), 1, 3);
  for (const auto& x : words)
    for (const auto& y : words)
      for (const auto& z : words) {
        Substitution s({{a.at("X"), x}, {a.at("Y"), y}, {a.at("Z"), z}}, 2);
        Substitution r({{b.at("P"), x}, {b.at("Q"), y}, {b.at("R"), z}}, 2);
        bool ok = is_solution(s, sys);
        CHECK(ok == solves_by_hand(s, sys));
        CHECK(ok == is_solution(r, renamed));
      }
}

TEST_CASE("extend_to_group") {
  auto sys = parse_equations("alphabet: a b\nXY = YX\n");
  auto p = pair_presentation(sys);
  CHECK(p.generators.size() == 4);
  CHECK(p.relations.size() == 1);
  auto rep = extend_to_group(subst(sys.alphabet(), {{"X", "ab"}, {"Y", "abab"}}), p);
  REQUIRE(rep.relator_images.size() == 1);
  CHECK(rep.relator_images[0].empty());
  CHECK(format(rep.generator_images.at(sys.alphabet().at("Y")), sys.alphabet()) == "abab");
  try {
    extend_to_group(subst(sys.alphabet(), {{"X", "ab"}, {"Y", "ba"}}), p);
    FAIL("expected RelationViolated");
  } catch (const RelationViolated& e) {
    CHECK(e.index() == 0);
  }
  PairPresentation empty;
  empty.alphabet = sys.alphabet();
  CHECK(extend_to_group(subst(sys.alphabet(), {{"X", "a"}}), empty).relator_images.empty());
  // Every oracle solution extends.
  for (const auto& s : enumerate_exhaustive(sys, {3}).solutions) CHECK_NOTHROW(extend_to_group(s, p));
}

TEST_CASE("positive_cone_check") {
  auto sys = parse_equations("alphabet: a b\nXY = YX\n");
  const auto& a = sys.alphabet();
  auto g = [&](const char* s) { return parse_group_word(s, a); };
  CHECK(positive_cone_check(subst(a, {{"X", "ab"}, {"Y", "b"}}), {g("X"), g("Y")}, a));
  CHECK_FALSE(positive_cone_check(subst(a, {{"X", "a"}, {"Y", "a"}}), {g("XY'")}, a));
  CHECK(positive_cone_check(subst(a, {{"X", "ab"}, {"Y", "b"}}), {g("XY'")}, a));
  CHECK(format(apply(subst(a, {{"X", "ab"}, {"Y", "b"}}), g("XY'"), a), a) == "a");
}

TEST_CASE("canonical form strips the common prefix") {
  auto sys = parse_equations("alphabet: a b\naXb = aYa\nXY = XY\nXY = XY\n");
  CHECK(sys.equations().size() == 2);
  CHECK(format(sys.canonical()[0].lhs, sys.alphabet()) == "Xb");
  CHECK(sys.canonical()[1].lhs.empty());
  CHECK_THROWS_AS(EquationSystem(Alphabet{}, {{PositiveWord{}, PositiveWord{}}}), Error);
}

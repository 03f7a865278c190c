#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "mrd/error.hpp"
#include "mrd/oracle.hpp"
#include "mrd/parse.hpp"

using namespace mrd;

namespace {

EquationSystem corpus(const char* name) {
  return load_equations(std::filesystem::path(MRD_DATA_DIR) / "systems" / name);
}

}  // namespace

TEST_CASE("all_words is shortlex") {
  auto w = all_words({Symbol{0}, Symbol{1}}, 1, 2);
  REQUIRE(w.size() == 6);
  for (std::size_t i = 1; i < w.size(); ++i) CHECK(shortlex_less(w[i - 1], w[i]));
  CHECK(all_words({Symbol{0}}, 0, 0).size() == 1);
}

TEST_CASE("exhaustive: commutation at max_len 2") {
  auto sys = corpus("commute.eq");
  auto set = enumerate_exhaustive(sys, {2});
  CHECK(set.complete);
  CHECK(set.solutions.size() == 10);
  // Independent count: pairs of words of length <= 2 with equal primitive roots.
  auto words = all_words(sys.coefficients(), 1, 2);
  std::size_t expected = 0;
  for (const auto& x : words)
    for (const auto& y : words)
      if (primitive_root(x).root == primitive_root(y).root) ++expected;
  CHECK(expected == 10);
}

TEST_CASE("exhaustive: tautology and clash") {
  auto taut = corpus("taut.eq");
  auto set = enumerate_exhaustive(taut, {2});
  REQUIRE(set.solutions.size() == 2);
  CHECK(format(set.solutions[0], taut.alphabet()) == "X=a");
  CHECK(format(set.solutions[1], taut.alphabet()) == "X=aa");
  for (std::size_t len = 1; len <= 5; ++len) {
    CHECK(enumerate_exhaustive(corpus("xa_bx.eq"), {len}).solutions.empty());
    CHECK(enumerate_levi(corpus("xa_bx.eq"), {len}).solutions.empty());
  }
}

TEST_CASE("levi matches exhaustive on the corpus") {
  for (const auto& entry : std::filesystem::directory_iterator(std::filesystem::path(MRD_DATA_DIR) / "systems")) {
    auto sys = load_equations(entry.path());
    for (std::size_t len = 1; len <= 4; ++len) {
      CAPTURE(entry.path().filename().string());
      CAPTURE(len);
      auto ex = enumerate_exhaustive(sys, {len});
      auto lv = enumerate_levi(sys, {len});
      CHECK(ex.complete);
      CHECK(lv.complete);
      CHECK(ex.solutions == lv.solutions);
      for (const auto& s : lv.solutions) CHECK(is_solution(s, sys));
    }
  }
}

TEST_CASE("levi prunes the letter clash immediately") {
  auto set = enumerate_levi(corpus("xa_bx.eq"), {6});
  CHECK(set.solutions.empty());
  CHECK(set.nodes <= 3);
}

TEST_CASE("conjugacy at max_len 3") {
  auto sys = corpus("conj.eq");
  CHECK(enumerate_levi(sys, {3}).solutions == enumerate_exhaustive(sys, {3}).solutions);
}

TEST_CASE("canonical order is sorted and duplicate free") {
  auto set = enumerate_levi(corpus("conj.eq"), {4});
  for (std::size_t i = 1; i < set.solutions.size(); ++i)
    CHECK(canonical_less(set.solutions[i - 1], set.solutions[i]));
}

TEST_CASE("caps mark the set incomplete") {
  auto sys = corpus("commute.eq");
  SearchBudget b{4, 5};
  auto ex = enumerate_exhaustive(sys, b);
  CHECK_FALSE(ex.complete);
  CHECK(ex.solutions.size() == 5);
  auto lv = enumerate_levi(sys, b);
  CHECK_FALSE(lv.complete);
  CHECK(lv.solutions.size() <= 5);
  SearchBudget nodes{4, 1000, 10};
  CHECK_FALSE(enumerate_levi(sys, nodes).complete);
  CHECK_THROWS_AS(enumerate_exhaustive(sys, {0}), Error);
}

TEST_CASE("commutation_witness") {
  Alphabet a;
  a.add_coefficient("a");
  a.add_coefficient("b");
  auto w = [&](const char* s) { return parse_positive_word(s, a); };
  CHECK(format(*commutation_witness(w("ab"), w("abab")), a) == "ab");
  CHECK_FALSE(commutation_witness(w("ab"), w("ba")));
  CHECK(format(*commutation_witness(w("aaa"), w("aa")), a) == "a");
  auto sys = corpus("commute.eq");
  for (const auto& s : enumerate_levi(sys, {6}).solutions) {
    auto x = s.at(sys.alphabet().at("X")), y = s.at(sys.alphabet().at("Y"));
    auto root = commutation_witness(x, y);
    REQUIRE(root);
    CHECK(primitive_root(*root).exponent == 1);
    CHECK(power(*root, x.size() / root->size()) == x);
    CHECK(power(*root, y.size() / root->size()) == y);
  }
}

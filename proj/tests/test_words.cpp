#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mrd/error.hpp"
#include "mrd/oracle.hpp"
#include "mrd/words.hpp"

using namespace mrd;

namespace {

Alphabet ab() {
  Alphabet a;
  a.add_coefficient("a");
  a.add_coefficient("b");
  return a;
}

}  // namespace

TEST_CASE("concat") {
  Alphabet a = ab();
  auto w = [&](const char* s) { return parse_positive_word(s, a); };
  CHECK(format(concat(w("ab"), w("ba")), a) == "abba");
  CHECK(format(concat(w("a"), w("")), a) == "a");
  Alphabet v;
  auto x = parse_positive_word("xay", v);
  CHECK(format(concat(x, parse_positive_word("x", v)), v) == "xayx");
  CHECK(concat(concat(w("a"), w("b")), w("ab")) == concat(w("a"), concat(w("b"), w("ab"))));
}

TEST_CASE("reduce") {
  Alphabet a = ab();
  CHECK(parse_group_word("aa'", a).empty());
  CHECK(format(parse_group_word("abb'a", a), a) == "aa");
  auto g = parse_group_word("abab", a);
  CHECK(format(g, a) == "abab");
  CHECK(reduce(g.letters()) == g);
  CHECK(multiply(g, g.inverse()).empty());
  // Idempotence over every raw word of length <= 6 on a, a', b, b'.
  std::vector<SignedSymbol> pool{{Symbol{0}, 1}, {Symbol{0}, -1}, {Symbol{1}, 1}, {Symbol{1}, -1}};
  std::vector<std::vector<SignedSymbol>> layer{{}};
  for (int len = 0; len < 6; ++len) {
    std::vector<std::vector<SignedSymbol>> next;
    for (const auto& w : layer)
      for (auto s : pool) {
        auto x = w;
        x.push_back(s);
        auto r = reduce(x);
        CHECK(reduce(r.letters()) == r);
        next.push_back(std::move(x));
      }
    layer = std::move(next);
  }
}

TEST_CASE("is_positive") {
  Alphabet a = ab();
  CHECK(is_positive(parse_group_word("ab", a)));
  CHECK_FALSE(is_positive(parse_group_word("ab'", a)));
  CHECK_FALSE(is_positive(GroupWord{}));
  auto words = all_words(a.coefficients(), 1, 3);
  for (const auto& u : words)
    for (const auto& v : words)
      CHECK(is_positive(multiply(GroupWord::from_positive(u), GroupWord::from_positive(v))));
}

TEST_CASE("primitive_root") {
  Alphabet a = ab();
  auto w = [&](const char* s) { return parse_positive_word(s, a); };
  auto r = primitive_root(w("ababab"));
  CHECK(format(r.root, a) == "ab");
  CHECK(r.exponent == 3);
  CHECK(primitive_root(w("aab")).exponent == 1);
  CHECK(format(primitive_root(w("aaaa")).root, a) == "a");
  CHECK(primitive_root(w("aaaa")).exponent == 4);
  CHECK_THROWS_AS(primitive_root(PositiveWord{}), Error);
  for (const auto& x : all_words(a.coefficients(), 1, 8)) {
    auto base = primitive_root(x);
    CHECK(power(base.root, base.exponent) == x);
    for (std::size_t m = 1; m <= 3 && x.size() * m <= 8; ++m)
      CHECK(primitive_root(power(x, m)).root == base.root);
  }
}

TEST_CASE("parser rejects unknown names and inverses in positive words") {
  const Alphabet a = ab();
  CHECK_THROWS_AS(parse_positive_word("ac", a), SyntaxError);
  CHECK_THROWS_AS(parse_positive_word("aa'b", a), SyntaxError);
  CHECK_THROWS_AS(parse_group_word("a*b", a), SyntaxError);
  Alphabet m;
  auto g = parse_group_word("aB'a", m);
  CHECK(format(g, m) == "aB'a");
  CHECK(m.is_variable(m.at("B")));
  CHECK_THROWS_AS(m.add_variable("a"), Error);
}

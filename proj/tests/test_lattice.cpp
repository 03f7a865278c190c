#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "mrd/error.hpp"
#include "mrd/lattice.hpp"
#include "support.hpp"

using namespace mrd;

namespace {

LatticeInstance make(std::size_t rank, std::vector<std::vector<std::int64_t>> gens, std::vector<const char*> lens) {
  LatticeInstance inst;
  inst.rank = rank;
  inst.generators.resize(static_cast<Eigen::Index>(gens.size()), static_cast<Eigen::Index>(rank));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < rank; ++j)
      inst.generators(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = gens[i][j];
  for (auto l : lens) inst.lengths.push_back(parse_rational(l));
  return inst;
}

}  // namespace

TEST_CASE("already positive") {
  auto inst = make(2, {{1, 0}, {0, 1}}, {"1", "2/3"});
  auto b = positive_basis(inst);
  CHECK(b.change_of_basis == IntMatrix::Identity(2, 2));
  CHECK(b.expressions == IntMatrix::Identity(2, 2));
  CHECK(b.steps == 0);
}

TEST_CASE("rank one") {
  auto inst = make(1, {{3}, {5}}, {"1"});
  auto b = positive_basis(inst);
  CHECK(b.change_of_basis(0, 0) == 1);
  CHECK(b.expressions(0, 0) == 3);
  CHECK(b.expressions(1, 0) == 5);
}

TEST_CASE("rank two instance matches the witness predicate") {
  auto inst = make(2, {{2, -1}, {-1, 1}}, {"1", "7/5"});
  auto b = positive_basis(inst);
  CHECK(is_positive_basis(inst, b.change_of_basis, b.expressions));
  CHECK(abs(determinant(b.change_of_basis)) == 1);
  auto w = rank2_witness(inst, 6);
  REQUIRE(w);
  IntMatrix winv(2, 2);
  std::int64_t det = (*w)(0, 0) * (*w)(1, 1) - (*w)(0, 1) * (*w)(1, 0);
  winv << (*w)(1, 1) * det, -(*w)(0, 1) * det, -(*w)(1, 0) * det, (*w)(0, 0) * det;
  CHECK(is_positive_basis(inst, *w, inst.generators * winv));
}

TEST_CASE("family deduplicates and is scale invariant") {
  auto a = make(2, {{2, -1}, {-1, 1}}, {"1", "7/5"});
  auto b = make(2, {{2, -1}, {-1, 1}}, {"3", "21/5"});
  auto c = make(2, {{2, -1}, {-1, 1}}, {"1", "8/5"});
  CHECK(positive_basis_family({a, b}).size() == 1);
  CHECK(positive_basis(a).change_of_basis == positive_basis(b).change_of_basis);
  auto fam = positive_basis_family({a, c});
  CHECK(fam.size() <= 2);
  for (const auto& pb : fam) {
    bool ok = is_positive_basis(a, pb.change_of_basis, pb.expressions) ||
              is_positive_basis(c, pb.change_of_basis, pb.expressions);
    CHECK(ok);
  }
  CHECK(positive_basis_family({a}).size() == 1);
}

TEST_CASE("errors") {
  CHECK_THROWS_WITH_AS(positive_basis(make(2, {{2, 0}, {0, 1}}, {"1", "1"})), doctest::Contains("span"), Error);
  try {
    positive_basis(make(2, {{1, 0}, {-1, 0}, {0, 1}}, {"1", "1"}));
    FAIL("expected NonPositiveGenerator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveGenerator);
  }
  try {
    positive_basis(make(2, {{1, -1}, {1, 0}, {0, 1}}, {"2", "1"}), 0);
    FAIL("expected StepBudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StepBudgetExceeded);
  }
  try {
    // a_0 and a_1 have equal length and the procedure must compare them.
    positive_basis(make(2, {{2, -1}, {0, 1}, {1, 0}}, {"1", "1"}));
    FAIL("expected DegenerateLengths");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateLengths);
  }
}

TEST_CASE("spans and determinant") {
  IntMatrix m(3, 2);
  m << 2, 0, 3, 0, 0, 1;
  CHECK(spans_lattice(m));
  IntMatrix n(2, 2);
  n << 2, 1, 4, 1;
  CHECK(determinant(n) == -2);
  CHECK_FALSE(spans_lattice(n));
  IntMatrix p(3, 3);
  p << 2, -1, 0, 1, 3, 2, 0, 5, -4;
  CHECK(determinant(p) == 2 * (-12 - 10) + 1 * (-4));
}

TEST_CASE("random spanning instances") {
  std::mt19937_64 rng(7);
  for (int done = 0; done < 60; ++done) {
    auto inst = testing::random_lattice_instance(rng);
    auto b = positive_basis(inst);
    CHECK(is_positive_basis(inst, b.change_of_basis, b.expressions));
  }
}

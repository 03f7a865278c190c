#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "mrd/rational.hpp"

namespace mrd {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Semigroup generators s_1..s_r of Z^rank (one per row) together with the
/// translation lengths of the standard basis vectors.
struct LatticeInstance {
  std::size_t rank = 0;
  IntMatrix generators;  // r x rank
  std::vector<Rational> lengths;

  void validate() const;
  /// <s_j, lengths>.
  Rational functional(const IntVector& v) const;
};

/// Rows of `change_of_basis` are the new basis vectors written in the old
/// coordinates; row j of `expressions` gives s_j = sum_i m_i * basis_i.
struct PositiveBasis {
  IntMatrix change_of_basis;  // rank x rank
  IntMatrix expressions;      // r x rank, all entries >= 0
  std::size_t steps = 0;
};

inline constexpr std::size_t kDefaultStepBudget = 1'000'000;

PositiveBasis positive_basis(const LatticeInstance& inst, std::size_t step_budget = kDefaultStepBudget);

/// One basis per functional, dropping repeats of the same change of basis.
std::vector<PositiveBasis> positive_basis_family(const std::vector<LatticeInstance>& instances,
                                                 std::size_t step_budget = kDefaultStepBudget);

/// True iff the rows of m generate Z^cols as a group.
bool spans_lattice(const IntMatrix& m);

/// Exact determinant (fraction-free elimination).
mpz_class determinant(const IntMatrix& m);

/// Checks the output predicate: unimodular U, expressions reproduce the
/// generators exactly and are nonnegative, basis vectors have positive length.
bool is_positive_basis(const LatticeInstance& inst, const IntMatrix& change_of_basis,
                       const IntMatrix& expressions);

/// Brute-force search for a positive basis of a rank-2 instance among
/// unimodular matrices with entries in [-bound, bound]; the search widens
/// the box one unit at a time so the first hit has the smallest entries.
std::optional<IntMatrix> rank2_witness(const LatticeInstance& inst, std::int64_t bound);

}  // namespace mrd

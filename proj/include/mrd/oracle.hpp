#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mrd/systems.hpp"

namespace mrd {

struct SearchBudget {
  std::size_t max_len = 4;
  std::size_t max_solutions = 1'000'000;
  std::size_t max_nodes = 50'000'000;

  void validate() const;
};

/// Solutions with every image length in [1, max_len], canonically ordered.
/// `complete` is false when a solution or node cap cut the search short.
struct SolutionSet {
  std::vector<Substitution> solutions;
  bool complete = true;
  std::size_t nodes = 0;

  bool contains(const Substitution& s) const;
};

/// Direct product enumeration over all images of length <= max_len.
SolutionSet enumerate_exhaustive(const EquationSystem& system, const SearchBudget& budget);

/// Prefix-splitting search: repeatedly compares the first letters of an
/// unsolved equation, guessing the next letter of a variable or closing it.
/// Prunes with letter-count and length-balance arguments.
SolutionSet enumerate_levi(const EquationSystem& system, const SearchBudget& budget);

/// The common primitive root of x and y when they commute.
std::optional<PositiveWord> commutation_witness(const PositiveWord& x, const PositiveWord& y);

/// All words over `letters` with length in [min_len, max_len], shortlex order.
std::vector<PositiveWord> all_words(const std::vector<Symbol>& letters, std::size_t min_len,
                                    std::size_t max_len);

}  // namespace mrd

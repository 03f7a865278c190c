#pragma once

#include <map>
#include <string>
#include <vector>

#include "mrd/words.hpp"

namespace mrd {

struct Equation {
  PositiveWord lhs;
  PositiveWord rhs;

  friend auto operator<=>(const Equation&, const Equation&) = default;
};

/// A finite system of word equations over coefficients and variables.
/// Equations are kept as given (`raw`) and with the common prefix of both
/// sides stripped (`canonical`); a canonical side may be empty.
class EquationSystem {
 public:
  EquationSystem() = default;
  /// Validates letters and nonempty sides; duplicates are dropped.
  EquationSystem(Alphabet alphabet, std::vector<Equation> equations);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Equation>& equations() const { return raw_; }
  const std::vector<Equation>& canonical() const { return canonical_; }
  std::vector<Symbol> variables() const { return alphabet_.variables(); }
  std::vector<Symbol> coefficients() const { return alphabet_.coefficients(); }
  std::size_t rank() const { return alphabet_.rank(); }

 private:
  Alphabet alphabet_;
  std::vector<Equation> raw_;
  std::vector<Equation> canonical_;
};

/// Presentation of S(Sigma) and of the group Gr(S): the same generators and
/// relations read in the two categories.
struct PairPresentation {
  Alphabet alphabet;
  std::vector<Symbol> generators;
  std::vector<Equation> relations;

  /// Relation i read as the group relator lhs . rhs^-1.
  GroupWord group_relator(std::size_t i) const;
};

PairPresentation pair_presentation(const EquationSystem& system);

/// Assignment of nonempty coefficient words to variables. Coefficients are
/// always fixed.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::map<Symbol, PositiveWord> images, std::size_t k);

  const std::map<Symbol, PositiveWord>& images() const { return images_; }
  std::size_t rank() const { return k_; }
  bool binds(Symbol v) const { return images_.count(v) != 0; }
  const PositiveWord& at(Symbol v) const { return images_.at(v); }
  /// Replaces or adds one image (must be nonempty).
  void set(Symbol v, PositiveWord image);

  friend bool operator==(const Substitution& a, const Substitution& b) {
    return a.images_ == b.images_;
  }

 private:
  std::map<Symbol, PositiveWord> images_;
  std::size_t k_ = 0;
};

/// Canonical order: images compared variable by variable (ascending symbol
/// id), each image in shortlex order.
bool canonical_less(const Substitution& a, const Substitution& b);

GroupWord apply(const Substitution& s, const GroupWord& w, const Alphabet& alphabet);
GroupWord apply(const Substitution& s, const PositiveWord& w, const Alphabet& alphabet);

bool is_solution(const Substitution& s, const EquationSystem& system);

struct GroupHomReport {
  std::map<Symbol, GroupWord> generator_images;
  /// Image of every relator after reduction (all empty on success).
  std::vector<GroupWord> relator_images;
};

/// Extends a solution to the group Gr(S); throws RelationViolated(i) for the
/// first relation that does not map to the identity.
GroupHomReport extend_to_group(const Substitution& s, const PairPresentation& p);

bool positive_cone_check(const Substitution& s, const std::vector<GroupWord>& elements,
                         const Alphabet& alphabet);

/// Renders as "X=ab Y=ba" using the alphabet's names.
std::string format(const Substitution& s, const Alphabet& alphabet);

}  // namespace mrd

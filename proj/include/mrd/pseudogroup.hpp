#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrd/rational.hpp"

namespace mrd {

struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  /// Open-interior membership.
  bool interior(const Rational& x) const { return lo < x && x < hi; }
  bool overlaps(const Interval& o) const { return lo < o.hi && o.lo < hi; }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// A base and its partner: `offset` translates `support` onto the partner's
/// support. Only orientation-preserving translations exist.
struct Base {
  int id = 0;
  Interval support;
  int partner = 0;
  Rational offset;
};

/// Union of closed intervals with paired bases. Value type; every move
/// returns a new system.
class BandSystem {
 public:
  BandSystem() = default;
  /// Validates (throws InvalidBandSystem) and sorts bases by id.
  BandSystem(std::vector<Interval> components, std::vector<Base> bases, std::vector<Rational> marks = {});

  const std::vector<Interval>& components() const { return components_; }
  const std::vector<Base>& bases() const { return bases_; }
  const std::vector<Rational>& marks() const { return marks_; }

  const Base& base(int id) const;
  bool has_base(int id) const;
  std::size_t pair_count() const { return bases_.size() / 2; }
  /// Sum of the lengths of all bases.
  Rational total_length() const;
  Rational domain_measure() const;
  int next_id() const;
  /// Index of the component containing x, or -1.
  int component_of(const Rational& x) const;

 private:
  std::vector<Interval> components_;
  std::vector<Base> bases_;
  std::vector<Rational> marks_;
};

/// Piecewise translation on open intervals; identity elsewhere. Tracks where
/// points of erased regions go. A piece without a shift marks points whose
/// orbit was trivial and that simply vanish.
struct Transport {
  struct Piece {
    Interval region;
    std::optional<Rational> shift;
  };
  std::vector<Piece> pieces;  // sorted, disjoint

  std::optional<Rational> apply(const Rational& x) const;
  /// Splits a segment at piece boundaries and maps every part; nullopt if a
  /// part vanishes.
  std::optional<std::vector<Interval>> map_segment(const Interval& segment) const;
  /// this, then next.
  Transport then(const Transport& next) const;
  void add(Interval region, std::optional<Rational> shift);
};

struct MoveResult {
  BandSystem system;
  Transport transport;
};

// Step function of cover multiplicity: value on each open elementary segment.
struct CoverageSegment {
  Interval segment;
  int multiplicity = 0;
  std::vector<int> bases;  // ids covering the open segment
};
std::vector<CoverageSegment> coverage_profile(const BandSystem& bs);
int multiplicity_at(const BandSystem& bs, const Rational& x);

/// Vertices are the connected components of the domain, edges the base
/// pairs. `covered` lists the maximal subintervals covered at least once.
struct AssociatedGraph {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::vector<Interval> covered;
  std::vector<std::pair<int, int>> edge_ends;  // vertex indices per pair
  long euler_characteristic() const { return static_cast<long>(vertices) - static_cast<long>(edges); }
};
AssociatedGraph associated_graph(const BandSystem& bs);

bool is_isolated(const BandSystem& bs, int base_id);

MoveResult move_remove_isolated(const BandSystem& bs, int base_id);
MoveResult move_trim_semi_isolated(const BandSystem& bs, const Interval& j);
MoveResult move_split_interior(const BandSystem& bs, const Interval& j);
MoveResult move_remove_double(const BandSystem& bs, const Interval& k);
/// Transfers the bases carried by the end of `carrier_id` onto its partner.
MoveResult entire_transformation(const BandSystem& bs, int carrier_id);
/// One twist at the right end of the last component.
MoveResult dehn_twist_positive_end(const BandSystem& bs);
/// Cuts a base pair into two at an interior point of the base.
MoveResult split_base(const BandSystem& bs, int base_id, const Rational& at);

enum class MoveKind { RemoveIsolated, RemoveDouble, TrimSemiIsolated, SplitInterior, Terminal, TerminalRational };
const char* to_string(MoveKind kind);

struct MoveRecord {
  MoveKind move = MoveKind::Terminal;
  std::string args;
  long chi_before = 0;
  long chi_after = 0;
  Rational total_length;
};

struct StepResult {
  BandSystem system;
  MoveRecord record;
  Transport transport;
};

/// Applies one move by priority: (1) or (4), else (2), else the leftmost (3).
StepResult rips_step(const BandSystem& bs);

struct RipsTrace {
  std::vector<MoveRecord> records;
  std::vector<BandSystem> systems;  // systems[0] is the input; one per record after it
  std::vector<std::size_t> round_ends;  // record index closing each round
  bool terminal = false;
};
/// Steps until terminal or `max_steps` moves. A round closes with a move (3)
/// or at the terminal state.
RipsTrace rips_run(const BandSystem& bs, std::size_t max_steps);

struct Generator {
  int id = 0;
  Interval segment;
};
/// Segments between consecutive base endpoints on each maximal covered
/// subinterval, left to right.
struct GeneratorSet {
  std::vector<Generator> elements;
  Rational length(std::size_t i) const { return elements.at(i).segment.length(); }
  std::size_t size() const { return elements.size(); }
};
GeneratorSet extract_generators(const BandSystem& bs);

/// Each old generator as a positive word (indices into new.elements).
std::vector<std::vector<std::size_t>> positive_expression(const GeneratorSet& old_gens, const GeneratorSet& new_gens,
                                                          const Transport& transport);

enum class WeightTag { Long, Short, SecondaryShort };
const char* to_string(WeightTag tag);

struct WeightClassification {
  std::vector<std::vector<std::size_t>> classes;  // generator indices, longest first
  std::vector<std::size_t> separators;            // positions in the sorted order after which a cut falls
  std::vector<WeightTag> tags;                    // by generator index
  Rational c1;
  long c_p = 4;
  std::optional<Rational> d1;  // longest / shortest inside the long class
  std::optional<Rational> d2;  // shortest long / longest non-long
  mpz_class e_cap;             // 4^f * f
};

WeightClassification classify_weights(const GeneratorSet& g, long c_p = 4);
/// Tags fractions of previously classified generators after a cut, following
/// the long/short/secondary-short rules; classes and separators are recomputed.
WeightClassification reclassify_after_cut(const WeightClassification& previous, const GeneratorSet& old_gens,
                                          const GeneratorSet& new_gens);

/// A generator word laid along the line from `start`; reversed paths run
/// right to left from `start` and so occupy [start - length, start].
struct GeneratorPath {
  Rational start;
  std::vector<std::size_t> word;
  bool reversed = false;
};
GeneratorPath reverse(const GeneratorPath& p, const GeneratorSet& g);

struct DualPositionReport {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_counts;
  std::size_t db_count = 0;
};
DualPositionReport dual_positions(const BandSystem& bs, const GeneratorSet& g, const GeneratorPath& p1,
                                  const GeneratorPath& p2);

/// Partition of `samples` (as indices) under bounded-depth orbit search;
/// depth 0 means full closure.
std::vector<std::vector<std::size_t>> orbit_partition(const BandSystem& bs, const std::vector<Rational>& samples,
                                                      std::size_t depth);

/// A reduced word of at most `depth` bases with zero total translation whose
/// domain has positive length.
struct StationaryWitness {
  std::vector<int> word;
  Interval domain;
};
std::optional<StationaryWitness> find_stationary_word(const BandSystem& bs, std::size_t depth);

}  // namespace mrd

#include <algorithm>

#include "mrd/error.hpp"
#include "mrd/pseudogroup.hpp"

namespace mrd {

const char* to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::RemoveIsolated: return "remove_isolated";
    case MoveKind::RemoveDouble: return "remove_double";
    case MoveKind::TrimSemiIsolated: return "trim_semi_isolated";
    case MoveKind::SplitInterior: return "split_interior";
    case MoveKind::Terminal: return "terminal";
    case MoveKind::TerminalRational: return "terminal_rational";
  }
  return "unknown";
}

namespace {

std::string show(const Interval& i) { return "[" + to_string(i.lo) + "," + to_string(i.hi) + "]"; }

// Maximal runs inside the support of `b` covered by b alone.
std::vector<Interval> once_covered_runs(const std::vector<CoverageSegment>& profile, const Base& b) {
  std::vector<Interval> runs;
  for (const auto& seg : profile) {
    if (!b.support.contains(seg.segment)) continue;
    if (seg.multiplicity != 1) continue;
    if (!runs.empty() && runs.back().hi == seg.segment.lo)
      runs.back().hi = seg.segment.hi;
    else
      runs.push_back(seg.segment);
  }
  return runs;
}

// Another base with the same support and nothing else over it.
std::optional<Interval> double_support(const BandSystem& bs, const std::vector<CoverageSegment>& profile,
                                       const Base& b) {
  for (const auto& seg : profile)
    if (b.support.contains(seg.segment) && seg.multiplicity != 2) return std::nullopt;
  for (const auto& t : bs.bases()) {
    if (t.id == b.id) continue;
    if (t.support.overlaps(b.support)) {
      if (t.support == b.support) return b.support;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

StepResult rips_step(const BandSystem& bs) {
  const long chi_before = associated_graph(bs).euler_characteristic();
  auto finish = [&](MoveKind kind, std::string args, MoveResult r) {
    StepResult out{std::move(r.system), {kind, std::move(args), chi_before, 0, 0}, std::move(r.transport)};
    out.record.chi_after = associated_graph(out.system).euler_characteristic();
    out.record.total_length = out.system.total_length();
    return out;
  };
  const auto profile = coverage_profile(bs);

  for (const auto& b : bs.bases()) {
    auto runs = once_covered_runs(profile, b);
    if (runs.size() == 1 && runs.front() == b.support)
      return finish(MoveKind::RemoveIsolated, "base " + std::to_string(b.id), move_remove_isolated(bs, b.id));
    if (auto k = double_support(bs, profile, b))
      return finish(MoveKind::RemoveDouble, show(*k), move_remove_double(bs, *k));
  }
  for (const auto& b : bs.bases())
    for (const auto& run : once_covered_runs(profile, b))
      if (run.lo == b.support.lo || run.hi == b.support.hi)
        return finish(MoveKind::TrimSemiIsolated, show(run), move_trim_semi_isolated(bs, run));
  std::optional<Interval> leftmost;
  for (const auto& b : bs.bases())
    for (const auto& run : once_covered_runs(profile, b))
      if (!leftmost || run.lo < leftmost->lo) leftmost = run;
  if (leftmost) return finish(MoveKind::SplitInterior, show(*leftmost), move_split_interior(bs, *leftmost));

  StepResult out{bs, {bs.bases().empty() ? MoveKind::TerminalRational : MoveKind::Terminal, "", chi_before, chi_before,
                      bs.total_length()},
                 {}};
  return out;
}

RipsTrace rips_run(const BandSystem& bs, std::size_t max_steps) {
  RipsTrace trace;
  trace.systems.push_back(bs);
  for (std::size_t i = 0; i < max_steps; ++i) {
    auto step = rips_step(trace.systems.back());
    bool terminal = step.record.move == MoveKind::Terminal || step.record.move == MoveKind::TerminalRational;
    trace.records.push_back(step.record);
    trace.systems.push_back(std::move(step.system));
    if (terminal || step.record.move == MoveKind::SplitInterior) trace.round_ends.push_back(trace.records.size() - 1);
    if (terminal) {
      trace.terminal = true;
      break;
    }
  }
  return trace;
}

}  // namespace mrd

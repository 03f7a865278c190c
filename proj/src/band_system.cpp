#include <algorithm>
#include <set>

#include "mrd/error.hpp"
#include "mrd/pseudogroup.hpp"

namespace mrd {

namespace {

Error invalid(const std::string& what) { return Error(ErrorCode::InvalidBandSystem, what); }

std::vector<Interval> normalize_components(std::vector<Interval> comps) {
  for (const auto& c : comps)
    if (!(c.lo < c.hi)) throw invalid("component [" + to_string(c.lo) + ", " + to_string(c.hi) + "] is empty");
  std::sort(comps.begin(), comps.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (auto& c : comps) {
    if (!out.empty() && c.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, c.hi);
    else
      out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

BandSystem::BandSystem(std::vector<Interval> components, std::vector<Base> bases, std::vector<Rational> marks)
    : components_(normalize_components(std::move(components))), bases_(std::move(bases)), marks_(std::move(marks)) {
  std::sort(bases_.begin(), bases_.end(), [](const Base& a, const Base& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < bases_.size(); ++i)
    if (bases_[i].id == bases_[i - 1].id) throw invalid("duplicate base id " + std::to_string(bases_[i].id));
  for (const auto& b : bases_) {
    const std::string name = "base " + std::to_string(b.id);
    if (!(b.support.lo < b.support.hi)) throw invalid(name + " has empty support");
    int c = component_of(b.support.lo);
    if (c < 0 || !components_[static_cast<std::size_t>(c)].contains(b.support))
      throw invalid(name + " is not inside a component");
    if (b.partner == b.id) throw invalid(name + " is paired with itself");
    if (!has_base(b.partner)) throw invalid(name + " has a missing partner");
    const Base& p = base(b.partner);
    if (p.partner != b.id) throw invalid(name + ": partner relation is not a matching");
    if (p.offset != -b.offset) throw invalid(name + ": offsets of the pair are inconsistent");
    if (p.support.lo != b.support.lo + b.offset || p.support.hi != b.support.hi + b.offset)
      throw invalid(name + ": offset does not carry the support onto its partner");
  }
  std::sort(marks_.begin(), marks_.end());
  marks_.erase(std::unique(marks_.begin(), marks_.end()), marks_.end());
}

const Base& BandSystem::base(int id) const {
  auto it = std::lower_bound(bases_.begin(), bases_.end(), id, [](const Base& b, int v) { return b.id < v; });
  if (it == bases_.end() || it->id != id) throw Error(ErrorCode::InvalidArgument, "no base with id " + std::to_string(id));
  return *it;
}

bool BandSystem::has_base(int id) const {
  auto it = std::lower_bound(bases_.begin(), bases_.end(), id, [](const Base& b, int v) { return b.id < v; });
  return it != bases_.end() && it->id == id;
}

Rational BandSystem::total_length() const {
  Rational sum = 0;
  for (const auto& b : bases_) sum += b.support.length();
  return sum;
}

Rational BandSystem::domain_measure() const {
  Rational sum = 0;
  for (const auto& c : components_) sum += c.length();
  return sum;
}

int BandSystem::next_id() const { return bases_.empty() ? 0 : bases_.back().id + 1; }

int BandSystem::component_of(const Rational& x) const {
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (components_[i].contains(x)) return static_cast<int>(i);
  return -1;
}

std::optional<Rational> Transport::apply(const Rational& x) const {
  for (const auto& p : pieces)
    if (p.region.interior(x)) {
      if (!p.shift) return std::nullopt;
      return x + *p.shift;
    }
  return x;
}

void Transport::add(Interval region, std::optional<Rational> shift) {
  if (!(region.lo < region.hi)) return;
  if (shift && *shift == 0) return;
  pieces.push_back({std::move(region), std::move(shift)});
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.region.lo < b.region.lo; });
}

std::optional<std::vector<Interval>> Transport::map_segment(const Interval& segment) const {
  std::vector<Rational> cuts{segment.lo, segment.hi};
  for (const auto& p : pieces)
    for (const auto* x : {&p.region.lo, &p.region.hi})
      if (segment.interior(*x)) cuts.push_back(*x);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    auto image = apply(mid);
    if (!image) return std::nullopt;
    Rational shift = *image - mid;
    out.push_back({cuts[i] + shift, cuts[i + 1] + shift});
  }
  return out;
}

Transport Transport::then(const Transport& next) const {
  Transport out;
  // Points moved by this transport continue through next.
  for (const auto& p : pieces) {
    if (!p.shift) {
      out.add(p.region, std::nullopt);
      continue;
    }
    Interval image{p.region.lo + *p.shift, p.region.hi + *p.shift};
    std::vector<Rational> cuts{image.lo, image.hi};
    for (const auto& q : next.pieces)
      for (const auto* x : {&q.region.lo, &q.region.hi})
        if (image.interior(*x)) cuts.push_back(*x);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      Rational mid = (cuts[i] + cuts[i + 1]) / 2;
      auto img = next.apply(mid);
      Interval region{cuts[i] - *p.shift, cuts[i + 1] - *p.shift};
      if (img)
        out.add(region, *p.shift + (*img - mid));
      else
        out.add(region, std::nullopt);
    }
  }
  // Points untouched here but moved by next.
  for (const auto& q : next.pieces) {
    std::vector<Interval> rest{q.region};
    for (const auto& p : pieces) {
      std::vector<Interval> cut;
      for (const auto& r : rest) {
        if (!r.overlaps(p.region)) {
          cut.push_back(r);
          continue;
        }
        if (r.lo < p.region.lo) cut.push_back({r.lo, p.region.lo});
        if (p.region.hi < r.hi) cut.push_back({p.region.hi, r.hi});
      }
      rest = std::move(cut);
    }
    for (auto& r : rest) out.add(r, q.shift);
  }
  return out;
}

std::vector<CoverageSegment> coverage_profile(const BandSystem& bs) {
  std::vector<Rational> cuts;
  for (const auto& c : bs.components()) {
    cuts.push_back(c.lo);
    cuts.push_back(c.hi);
  }
  for (const auto& b : bs.bases()) {
    cuts.push_back(b.support.lo);
    cuts.push_back(b.support.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<CoverageSegment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    if (bs.component_of(mid) < 0) continue;
    CoverageSegment seg{{cuts[i], cuts[i + 1]}, 0, {}};
    for (const auto& b : bs.bases())
      if (b.support.contains(seg.segment)) seg.bases.push_back(b.id);
    seg.multiplicity = static_cast<int>(seg.bases.size());
    out.push_back(std::move(seg));
  }
  return out;
}

int multiplicity_at(const BandSystem& bs, const Rational& x) {
  int m = 0;
  for (const auto& b : bs.bases())
    if (b.support.contains(x)) ++m;
  return m;
}

AssociatedGraph associated_graph(const BandSystem& bs) {
  AssociatedGraph g;
  g.vertices = bs.components().size();
  g.edges = bs.pair_count();
  for (const auto& seg : coverage_profile(bs)) {
    if (seg.multiplicity == 0) continue;
    if (!g.covered.empty() && g.covered.back().hi == seg.segment.lo)
      g.covered.back().hi = seg.segment.hi;
    else
      g.covered.push_back(seg.segment);
  }
  for (const auto& b : bs.bases())
    if (b.id < b.partner)
      g.edge_ends.emplace_back(bs.component_of(b.support.lo), bs.component_of(bs.base(b.partner).support.lo));
  return g;
}

}  // namespace mrd

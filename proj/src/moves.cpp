#include <algorithm>

#include "mrd/error.hpp"
#include "mrd/pseudogroup.hpp"

namespace mrd {

namespace {

Error precondition(const std::string& what) { return Error(ErrorCode::PreconditionViolated, what); }

std::string show(const Interval& i) { return "[" + to_string(i.lo) + ", " + to_string(i.hi) + "]"; }

// Removes the open interval (lo, hi) from the domain; zero-length leftovers
// are dropped.
std::vector<Interval> erase_open(const std::vector<Interval>& comps, const Interval& cut) {
  std::vector<Interval> out;
  for (const auto& c : comps) {
    if (!c.overlaps(cut)) {
      out.push_back(c);
      continue;
    }
    if (c.lo < cut.lo) out.push_back({c.lo, cut.lo});
    if (cut.hi < c.hi) out.push_back({cut.hi, c.hi});
  }
  return out;
}

std::vector<Base> without(const std::vector<Base>& bases, std::initializer_list<int> ids) {
  std::vector<Base> out;
  for (const auto& b : bases)
    if (std::find(ids.begin(), ids.end(), b.id) == ids.end()) out.push_back(b);
  return out;
}

Base& find(std::vector<Base>& bases, int id) {
  for (auto& b : bases)
    if (b.id == id) return b;
  throw Error(ErrorCode::InvalidArgument, "no base with id " + std::to_string(id));
}

// Ids of bases whose support overlaps the open interval.
std::vector<int> covering(const BandSystem& bs, const Interval& j) {
  std::vector<int> out;
  for (const auto& b : bs.bases())
    if (b.support.overlaps(j)) out.push_back(b.id);
  return out;
}

// The single base covering every point of j, if j is covered exactly once.
const Base* once_covered_by(const BandSystem& bs, const Interval& j) {
  if (!(j.lo < j.hi)) return nullptr;
  auto ids = covering(bs, j);
  if (ids.size() != 1) return nullptr;
  const Base& b = bs.base(ids.front());
  return b.support.contains(j) ? &b : nullptr;
}

}  // namespace

bool is_isolated(const BandSystem& bs, int base_id) {
  const Base& b = bs.base(base_id);
  return once_covered_by(bs, b.support) == &b;
}

MoveResult move_remove_isolated(const BandSystem& bs, int base_id) {
  if (!is_isolated(bs, base_id))
    throw Error(ErrorCode::NotIsolated, "base " + std::to_string(base_id) + " overlaps another base");
  const Base& b = bs.base(base_id);
  MoveResult r{BandSystem(erase_open(bs.components(), b.support), without(bs.bases(), {b.id, b.partner}), bs.marks()),
               {}};
  r.transport.add(b.support, b.offset);
  return r;
}

MoveResult split_base(const BandSystem& bs, int base_id, const Rational& at) {
  const Base& b = bs.base(base_id);
  if (!b.support.interior(at)) throw precondition("split point outside the interior of base " + std::to_string(base_id));
  const Base& p = bs.base(b.partner);
  int right = bs.next_id(), partner_right = right + 1;
  std::vector<Base> bases = bs.bases();
  find(bases, b.id).support.hi = at;
  find(bases, p.id).support.hi = at + b.offset;
  bases.push_back({right, {at, b.support.hi}, partner_right, b.offset});
  bases.push_back({partner_right, {at + b.offset, p.support.hi}, right, p.offset});
  return {BandSystem(bs.components(), std::move(bases), bs.marks()), {}};
}

MoveResult move_trim_semi_isolated(const BandSystem& bs, const Interval& j) {
  const Base* found = once_covered_by(bs, j);
  if (!found) throw precondition(show(j) + " is not covered exactly once by one base");
  const Base& b = *found;
  if (j == b.support) throw precondition(show(j) + " is the whole base; remove it instead");
  bool left = j.lo == b.support.lo, right = j.hi == b.support.hi;
  if (!left && !right) throw precondition(show(j) + " does not contain an endpoint of its base");
  std::vector<Base> bases = bs.bases();
  Base& nb = find(bases, b.id);
  Base& np = find(bases, b.partner);
  if (left) {
    nb.support.lo = j.hi;
    np.support.lo = j.hi + b.offset;
  } else {
    nb.support.hi = j.lo;
    np.support.hi = j.lo + b.offset;
  }
  MoveResult r{BandSystem(erase_open(bs.components(), j), std::move(bases), bs.marks()), {}};
  r.transport.add(j, b.offset);
  return r;
}

MoveResult move_split_interior(const BandSystem& bs, const Interval& j) {
  const Base* found = once_covered_by(bs, j);
  if (!found) throw precondition(show(j) + " is not covered exactly once by one base");
  const Base& b = *found;
  if (!b.support.interior(j.lo) || !b.support.interior(j.hi))
    throw precondition(show(j) + " touches an endpoint of its base");
  const Base& p = bs.base(b.partner);
  int right = bs.next_id(), partner_right = right + 1;
  std::vector<Base> bases = bs.bases();
  find(bases, b.id).support.hi = j.lo;
  find(bases, p.id).support.hi = j.lo + b.offset;
  bases.push_back({right, {j.hi, b.support.hi}, partner_right, b.offset});
  bases.push_back({partner_right, {j.hi + b.offset, p.support.hi}, right, p.offset});
  MoveResult r{BandSystem(erase_open(bs.components(), j), std::move(bases), bs.marks()), {}};
  r.transport.add(j, b.offset);
  return r;
}

MoveResult move_remove_double(const BandSystem& bs, const Interval& k) {
  auto ids = covering(bs, k);
  if (ids.size() != 2) throw precondition(show(k) + " is not covered by exactly two bases");
  const Base& b1 = bs.base(ids[0]);
  const Base& b2 = bs.base(ids[1]);
  if (!(b1.support == k) || !(b2.support == k)) throw precondition(show(k) + " is not the support of both bases");
  MoveResult r;
  if (b1.partner == b2.id) {
    r.system = BandSystem(erase_open(bs.components(), k), without(bs.bases(), {b1.id, b2.id}), bs.marks());
    r.transport.add(k, std::nullopt);
    return r;
  }
  const Base& p1 = bs.base(b1.partner);
  const Base& p2 = bs.base(b2.partner);
  std::vector<Base> bases = without(bs.bases(), {b1.id, b2.id});
  Rational shift = b2.offset - b1.offset;  // p1 -> k -> p2
  Base& n1 = find(bases, p1.id);
  Base& n2 = find(bases, p2.id);
  n1.partner = p2.id;
  n1.offset = shift;
  n2.partner = p1.id;
  n2.offset = -shift;
  r.system = BandSystem(erase_open(bs.components(), k), std::move(bases), bs.marks());
  r.transport.add(k, b1.offset);
  return r;
}

MoveResult entire_transformation(const BandSystem& bs, int carrier_id) {
  const Base& c = bs.base(carrier_id);
  int comp = bs.component_of(c.support.lo);
  if (bs.components()[static_cast<std::size_t>(comp)].hi != c.support.hi)
    throw precondition("carrier " + std::to_string(carrier_id) + " does not end at the positive end of its component");
  for (const auto& t : bs.bases())
    if (t.id != c.id && t.support == c.support)
      throw Error(ErrorCode::DegenerateOverlap, "bases " + std::to_string(c.id) + " and " + std::to_string(t.id) +
                                                    " have the same support; the carrier is ambiguous");
  // Cut point: the transferred part (e, end] may only meet bases that lie
  // inside it. The carrier's partner is never transferred.
  Rational e = c.support.lo;
  for (bool moved = true; moved;) {
    moved = false;
    for (const auto& t : bs.bases()) {
      if (t.id == c.id) continue;
      bool straddles = t.support.interior(e);
      bool partner_inside = t.id == c.partner && t.support.hi > e && t.support.lo < c.support.hi;
      if ((straddles || partner_inside) && t.support.hi > e) {
        e = t.support.hi;
        moved = true;
      }
    }
  }
  std::vector<int> moving;
  if (e < c.support.hi)
    for (const auto& t : bs.bases())
      if (t.id != c.id && e <= t.support.lo && t.support.hi <= c.support.hi) moving.push_back(t.id);
  if (moving.empty()) return {bs, {}};

  const Rational o = c.offset;
  auto is_moving = [&](int id) { return std::find(moving.begin(), moving.end(), id) != moving.end(); };
  std::vector<Base> bases = bs.bases();
  for (auto& t : bases) {
    bool here = is_moving(t.id), there = is_moving(t.partner);
    if (here) {
      t.support.lo += o;
      t.support.hi += o;
    }
    if (here && !there) t.offset -= o;
    if (!here && there) t.offset += o;
  }
  if (e == c.support.lo) {
    bases = without(bases, {c.id, c.partner});
  } else {
    find(bases, c.id).support.hi = e;
    find(bases, c.partner).support.hi = e + o;
  }
  Interval cut{e, c.support.hi};
  MoveResult r{BandSystem(erase_open(bs.components(), cut), std::move(bases), bs.marks()), {}};
  r.transport.add(cut, o);
  return r;
}

MoveResult dehn_twist_positive_end(const BandSystem& bs) {
  if (bs.components().empty()) throw precondition("empty system");
  const Rational pv = bs.components().back().hi;
  std::vector<const Base*> ending;
  for (const auto& b : bs.bases())
    if (b.support.hi == pv) ending.push_back(&b);
  if (ending.size() != 2)
    throw precondition(std::to_string(ending.size()) + " bases end at the positive endpoint; need exactly 2");
  const Base* b1 = ending[0];
  const Base* b2 = ending[1];
  if (b1->support.length() < b2->support.length()) std::swap(b1, b2);
  const Rational short_len = b2->support.length();
  if (b1->support.length() == short_len) return move_remove_double(bs, b1->support);
  auto split = split_base(bs, b1->id, pv - short_len);
  auto twist = move_remove_double(split.system, {pv - short_len, pv});
  return {std::move(twist.system), split.transport.then(twist.transport)};
}

}  // namespace mrd

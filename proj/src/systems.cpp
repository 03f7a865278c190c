#include "mrd/systems.hpp"

#include <algorithm>

#include "mrd/error.hpp"

namespace mrd {

namespace {

Equation strip_common_prefix(const Equation& e) {
  const auto& l = e.lhs.letters();
  const auto& r = e.rhs.letters();
  std::size_t i = 0;
  while (i < l.size() && i < r.size() && l[i] == r[i]) ++i;
  auto d = static_cast<std::ptrdiff_t>(i);
  return {PositiveWord({l.begin() + d, l.end()}), PositiveWord({r.begin() + d, r.end()})};
}

}  // namespace

EquationSystem::EquationSystem(Alphabet alphabet, std::vector<Equation> equations)
    : alphabet_(std::move(alphabet)) {
  for (auto& e : equations) {
    if (e.lhs.empty() || e.rhs.empty())
      throw Error(ErrorCode::InvalidArgument, "equation with an empty side");
    for (const auto* side : {&e.lhs, &e.rhs})
      for (Symbol s : *side)
        if (s.id >= alphabet_.size())
          throw Error(ErrorCode::InvalidArgument, "equation letter outside the alphabet");
    if (std::find(raw_.begin(), raw_.end(), e) == raw_.end()) raw_.push_back(std::move(e));
  }
  canonical_.reserve(raw_.size());
  for (const auto& e : raw_) canonical_.push_back(strip_common_prefix(e));
}

GroupWord PairPresentation::group_relator(std::size_t i) const {
  const auto& rel = relations.at(i);
  return multiply(GroupWord::from_positive(rel.lhs), GroupWord::from_positive(rel.rhs).inverse());
}

PairPresentation pair_presentation(const EquationSystem& system) {
  PairPresentation p;
  p.alphabet = system.alphabet();
  for (std::uint32_t i = 0; i < p.alphabet.size(); ++i) p.generators.push_back(Symbol{i});
  p.relations = system.equations();
  return p;
}

Substitution::Substitution(std::map<Symbol, PositiveWord> images, std::size_t k)
    : images_(std::move(images)), k_(k) {
  for (const auto& [v, w] : images_)
    if (w.empty()) throw Error(ErrorCode::InvalidArgument, "substitution image must be nonempty");
}

void Substitution::set(Symbol v, PositiveWord image) {
  if (image.empty()) throw Error(ErrorCode::InvalidArgument, "substitution image must be nonempty");
  images_[v] = std::move(image);
}

bool canonical_less(const Substitution& a, const Substitution& b) {
  auto ia = a.images().begin();
  auto ib = b.images().begin();
  for (; ia != a.images().end() && ib != b.images().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return shortlex_less(ia->second, ib->second);
  }
  return a.images().size() < b.images().size();
}

GroupWord apply(const Substitution& s, const GroupWord& w, const Alphabet& alphabet) {
  std::vector<SignedSymbol> raw;
  for (const auto& l : w.letters()) {
    if (alphabet.is_coefficient(l.symbol)) {
      raw.push_back(l);
      continue;
    }
    auto it = s.images().find(l.symbol);
    if (it == s.images().end()) throw UnboundVariable(alphabet.name(l.symbol));
    if (l.exponent > 0) {
      for (Symbol c : it->second) raw.push_back({c, 1});
    } else {
      for (auto c = it->second.letters().rbegin(); c != it->second.letters().rend(); ++c)
        raw.push_back({*c, -1});
    }
  }
  return reduce(raw);
}

GroupWord apply(const Substitution& s, const PositiveWord& w, const Alphabet& alphabet) {
  return apply(s, GroupWord::from_positive(w), alphabet);
}

bool is_solution(const Substitution& s, const EquationSystem& system) {
  for (const auto& e : system.equations())
    if (apply(s, e.lhs, system.alphabet()) != apply(s, e.rhs, system.alphabet())) return false;
  return true;
}

GroupHomReport extend_to_group(const Substitution& s, const PairPresentation& p) {
  GroupHomReport report;
  for (Symbol g : p.generators)
    report.generator_images[g] =
        p.alphabet.is_coefficient(g)
            ? GroupWord::from_positive(PositiveWord({g}))
            : apply(s, GroupWord::from_positive(PositiveWord({g})), p.alphabet);
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    auto image = apply(s, p.group_relator(i), p.alphabet);
    if (!image.empty()) throw RelationViolated(i);
    report.relator_images.push_back(std::move(image));
  }
  return report;
}

bool positive_cone_check(const Substitution& s, const std::vector<GroupWord>& elements,
                         const Alphabet& alphabet) {
  return std::all_of(elements.begin(), elements.end(),
                     [&](const GroupWord& e) { return is_positive(apply(s, e, alphabet)); });
}

std::string format(const Substitution& s, const Alphabet& alphabet) {
  std::string out;
  for (const auto& [v, w] : s.images()) {
    if (!out.empty()) out += ' ';
    out += alphabet.name(v) + "=" + format(w, alphabet);
  }
  return out;
}

}  // namespace mrd

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mrd {

/// Interned letter. Ids index into an `Alphabet`; comparisons are integer
/// comparisons.
struct Symbol {
  std::uint32_t id = 0;

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

enum class SymbolKind : std::uint8_t { Coefficient, Variable };

/// Coefficients a_1..a_k and variables x_1..x_n with display names.
/// Display convention: coefficient names start with a lowercase letter,
/// variable names with an uppercase letter.
class Alphabet {
 public:
  Alphabet() = default;

  /// Adds a letter, or returns the existing one when the name is known with
  /// the same kind. Throws if the name is known with the other kind.
  Symbol add(const std::string& name, SymbolKind kind);
  Symbol add_coefficient(const std::string& name) { return add(name, SymbolKind::Coefficient); }
  Symbol add_variable(const std::string& name) { return add(name, SymbolKind::Variable); }

  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  Symbol at(const std::string& name) const;
  const std::string& name(Symbol s) const { return names_.at(s.id); }
  SymbolKind kind(Symbol s) const { return kinds_.at(s.id); }
  bool is_coefficient(Symbol s) const { return kind(s) == SymbolKind::Coefficient; }
  bool is_variable(Symbol s) const { return kind(s) == SymbolKind::Variable; }

  std::size_t size() const { return names_.size(); }
  /// In insertion order.
  std::vector<Symbol> coefficients() const;
  std::vector<Symbol> variables() const;
  std::size_t rank() const { return coefficients().size(); }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.names_ == b.names_ && a.kinds_ == b.kinds_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<SymbolKind> kinds_;
  std::map<std::string, std::uint32_t> index_;
};

/// Finite sequence of letters without inverses. The empty word is
/// representable; semigroup-level APIs reject it.
class PositiveWord {
 public:
  PositiveWord() = default;
  explicit PositiveWord(std::vector<Symbol> letters) : letters_(std::move(letters)) {}

  const std::vector<Symbol>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Symbol operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  void push_back(Symbol s) { letters_.push_back(s); }
  PositiveWord& operator+=(const PositiveWord& other);

  friend auto operator<=>(const PositiveWord&, const PositiveWord&) = default;

 private:
  std::vector<Symbol> letters_;
};

PositiveWord concat(const PositiveWord& u, const PositiveWord& v);
PositiveWord power(const PositiveWord& w, std::size_t exponent);

/// Shortlex order: shorter words first, then lexicographic by symbol id.
bool shortlex_less(const PositiveWord& u, const PositiveWord& v);

struct SignedSymbol {
  Symbol symbol;
  int exponent = 1;  // +1 or -1

  SignedSymbol inverse() const { return {symbol, -exponent}; }
  friend auto operator<=>(const SignedSymbol&, const SignedSymbol&) = default;
};

/// Free-group element stored in reduced form.
class GroupWord {
 public:
  GroupWord() = default;

  /// Positive word read as a group element (already reduced).
  static GroupWord from_positive(const PositiveWord& w);

  const std::vector<SignedSymbol>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  GroupWord inverse() const;
  /// Meaningful only when `is_positive(*this)` or empty.
  PositiveWord to_positive() const;

  friend auto operator<=>(const GroupWord&, const GroupWord&) = default;

 private:
  friend GroupWord reduce(const std::vector<SignedSymbol>& raw);
  std::vector<SignedSymbol> letters_;
};

/// Free reduction of an arbitrary signed sequence.
GroupWord reduce(const std::vector<SignedSymbol>& raw);
/// reduce(u . v)
GroupWord multiply(const GroupWord& u, const GroupWord& v);

/// Every exponent +1 and length at least 1.
bool is_positive(const GroupWord& w);

struct PrimitiveRoot {
  PositiveWord root;
  std::size_t exponent = 1;
};

/// w = root^exponent with root not a proper power. Requires |w| >= 1.
PrimitiveRoot primitive_root(const PositiveWord& w);

// Display syntax: a name is a letter followed by optional digits; lowercase
// first letter = coefficient, uppercase = variable; a trailing `'` marks an
// inverse. Example: aB'a.

/// Parses a group word. Unknown names are added to `alphabet` with the kind
/// implied by their case. Throws SyntaxError with 1-based column.
GroupWord parse_group_word(std::string_view text, Alphabet& alphabet, std::size_t line = 1);
/// As above but rejects inverses.
PositiveWord parse_positive_word(std::string_view text, Alphabet& alphabet, std::size_t line = 1);
/// Parses against a fixed alphabet; unknown names are errors.
PositiveWord parse_positive_word(std::string_view text, const Alphabet& alphabet);
GroupWord parse_group_word(std::string_view text, const Alphabet& alphabet);

std::string format(const PositiveWord& w, const Alphabet& alphabet);
std::string format(const GroupWord& w, const Alphabet& alphabet);

/// Kind implied by the display convention for a name.
SymbolKind kind_of_name(std::string_view name);

}  // namespace mrd

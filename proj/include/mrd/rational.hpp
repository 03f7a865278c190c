#pragma once

#include <gmpxx.h>

#include <string>

namespace mrd {

using Rational = mpq_class;

/// Parses "p/q", "p" or a JSON integer rendered as text. Throws on malformed
/// input or a zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

}  // namespace mrd

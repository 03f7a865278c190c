#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mrd/systems.hpp"

namespace mrd {

/// Equation file syntax:
///
///   # comment
///   alphabet: a b
///   XZ = ZY
///
/// The header is optional; without it the coefficients are the lowercase
/// letters that occur. Lowercase names are coefficients, uppercase names are
/// variables. Errors are SyntaxError with 1-based line and column.
EquationSystem parse_equations(std::string_view text);
EquationSystem load_equations(const std::filesystem::path& path);

/// Inverse of parse_equations on canonical forms (always writes the header).
std::string format(const EquationSystem& system);

std::string read_file(const std::filesystem::path& path);

}  // namespace mrd

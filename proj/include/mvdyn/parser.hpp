#pragma once

#include <string>
#include <string_view>

#include "mvdyn/formula.hpp"

namespace mvdyn {

// Grammar (loosest to tightest): "->" (right assoc), "|", "&", "(+)", "*", prefix "!".
// Atoms: x<digits>, 0, 1, parenthesized formulas. The unicode symbols
// ¬ ⋆ ⊕ ∧ ∨ → are accepted as aliases. Throws ParseError.
Formula parse_formula(std::string_view text);

enum class PrintStyle { Ascii, Unicode };

// Minimal parenthesization; parse_formula(print_formula(f)) is identical to f.
std::string print_formula(const Formula& f, PrintStyle style = PrintStyle::Ascii);

}  // namespace mvdyn

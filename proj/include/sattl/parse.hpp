#pragma once

#include <string>
#include <string_view>

#include "sattl/formula.hpp"

namespace sattl {

/// Parses the concrete SATTL syntax:
///
///   formula := seq { "++" seq }
///   seq     := unit { ";" unit }
///   unit    := lit "U" lit | "<>" lit | "[]" lit | "(" formula ")"
///   lit     := term { "|" term }
///   term    := "true" | ("+" | "-") IDENT | "(" lit ")"
///
/// `<> l` becomes `true U l` and `[] l` becomes `l U +end`. Throws
/// SyntaxError (with byte offset and the expected-token set) or
/// ReservedNameError for signed uses of "true" and for "-end".
TemporalFormula parse_formula(std::string_view text);

// Convenience for the common case of a single `cond U goal`; throws
// SyntaxError when the text is not atomic.
AtomicTask parse_atomic(std::string_view text);

std::string format_literal(const Literal& l);
std::string format_task(const AtomicTask& t);

/// Canonical text; composites are fully parenthesized so that
/// parse_formula(format_formula(f)) == f.
std::string format_formula(const TemporalFormula& f);

}  // namespace sattl

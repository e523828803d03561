#pragma once

#include <string>
#include <string_view>

#include "pbb/arith/ast.hpp"

namespace pbb::arith {

// Parses the canonical surface syntax back into an AST. Strict: 4-space
// indentation, one statement per line, single trailing `return tN`.
// Throws ParseError with 1-based line/column on malformed input.
ArithProgram parse_code(std::string_view source);

} // namespace pbb::arith

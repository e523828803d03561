#pragma once

#include <string>

#include "pbb/arith/ast.hpp"

namespace pbb::arith {

// Emits the canonical surface syntax: 4-space indentation, LF endings,
// single spaces around binary operators. parse_code(render_code(p)) == p.
std::string render_code(const ArithProgram& program);

// Deterministic English description of the program, one clause per
// statement, faithful enough that a careful reader reproduces evaluate().
std::string render_nl(const ArithProgram& program);

} // namespace pbb::arith

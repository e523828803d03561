#pragma once

#include <string>

#include "pbb/arith/ast.hpp"

namespace pbb::arith {

// A function defined as the composition of two corpus programs:
//
//     def bar(x):
//         return zibble(foo(x))
//
// The intermediate value inner(x) may leave the declared input domain; only
// the magnitude bound applies to the outer application.
struct CompositeProgram {
    std::string name;
    ArithProgram inner;
    ArithProgram outer;
    InputDomain domain;
    int combined_length = 0; // length(inner) + length(outer)
};

// Builds the composite and checks, exhaustively over the domain, that the
// outer program does not fault on any value in the inner program's image.
// Throws CompositionUnsafe otherwise.
CompositeProgram compose(const ArithProgram& inner, const ArithProgram& outer,
                         std::string composite_name, const InputDomain& domain);

std::int64_t evaluate_composite(const CompositeProgram& composite, std::int64_t x);

std::string render_composite_code(const CompositeProgram& composite);
std::string render_composite_nl(const CompositeProgram& composite);

} // namespace pbb::arith

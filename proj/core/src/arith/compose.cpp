#include "pbb/arith/compose.hpp"

#include "pbb/arith/interpreter.hpp"
#include "pbb/common/errors.hpp"

namespace pbb::arith {

CompositeProgram compose(const ArithProgram& inner, const ArithProgram& outer,
                         std::string composite_name, const InputDomain& domain) {
    CompositeProgram composite;
    composite.name = std::move(composite_name);
    composite.inner = inner;
    composite.outer = outer;
    composite.domain = domain;
    composite.combined_length = inner.declared_length + outer.declared_length;
    for (std::int64_t x = domain.lo; x < domain.hi; ++x) {
        std::int64_t mid = 0;
        try {
            mid = run_unchecked(inner, x);
        } catch (const ArithmeticFault& e) {
            throw CompositionUnsafe("inner program " + inner.name + " faults at x=" +
                                    std::to_string(x) + ": " + e.what());
        }
        try {
            run_unchecked(outer, mid);
        } catch (const ArithmeticFault& e) {
            throw CompositionUnsafe("outer program " + outer.name + " faults on image value " +
                                    std::to_string(mid) + " (x=" + std::to_string(x) +
                                    "): " + e.what());
        }
    }
    return composite;
}

std::int64_t evaluate_composite(const CompositeProgram& composite, std::int64_t x) {
    if (!composite.domain.contains(x))
        throw DomainViolation("input " + std::to_string(x) + " outside composite domain");
    return run_unchecked(composite.outer, run_unchecked(composite.inner, x));
}

std::string render_composite_code(const CompositeProgram& composite) {
    return "def " + composite.name + "(x):\n    return " + composite.outer.name + "(" +
           composite.inner.name + "(x))\n";
}

std::string render_composite_nl(const CompositeProgram& composite) {
    return "A " + composite.name + " is a process that takes an input value x, applies " +
           composite.inner.name + " to it, and then applies " + composite.outer.name +
           " to the result.";
}

} // namespace pbb::arith

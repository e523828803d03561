#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pbb/arith/ast.hpp"

namespace pbb::arith {

// Any intermediate or final value outside this bound is an arithmetic fault.
inline constexpr std::int64_t kMagnitudeBound = 1'000'000'000'000LL; // 10^12

struct TraceStep {
    std::string locator; // statement path, e.g. "2" or "1.0"
    std::string op;      // "+", "-", "*", "//", "%", ">", "<", "**", "abs"
    std::vector<std::int64_t> operands;
    std::int64_t result = 0;
};

struct ExecutionTrace {
    std::vector<TraceStep> steps;
    int step_count = 0;
    std::int64_t output = 0;
};

// Floor division and modulo follow the surface language: quotient rounds
// toward negative infinity, remainder takes the divisor's sign.
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t floor_mod(std::int64_t a, std::int64_t b);

// Runs the program without a domain check (used for composites, whose
// intermediate values may leave the declared domain). Throws ArithmeticFault
// if any value exceeds the magnitude bound.
std::int64_t run_unchecked(const ArithProgram& program, std::int64_t x);

std::int64_t evaluate(const ArithProgram& program, std::int64_t x, const InputDomain& domain);

ExecutionTrace trace(const ArithProgram& program, std::int64_t x, const InputDomain& domain);

// Step count only, no step materialization; same fault behavior as trace.
int count_steps(const ArithProgram& program, std::int64_t x);

// Max step count over the full (exhaustively enumerated) domain.
int measure_length(const ArithProgram& program, const InputDomain& domain);

} // namespace pbb::arith

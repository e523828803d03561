#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace pbb::arith {

// Operand of an expression: the input variable x, a temporary tN, or an
// integer literal, optionally wrapped in one or more abs(...) applications.
// Each abs wrap costs one execution step.
struct Operand {
    enum class Kind { Input, Temp, Literal };
    Kind kind = Kind::Input;
    int temp = -1;           // Kind::Temp
    std::int64_t literal = 0; // Kind::Literal
    int abs_wraps = 0;

    bool operator==(const Operand&) const = default;

    static Operand input(int wraps = 0) { return {Kind::Input, -1, 0, wraps}; }
    static Operand temp_ref(int id, int wraps = 0) { return {Kind::Temp, id, 0, wraps}; }
    static Operand lit(std::int64_t v, int wraps = 0) { return {Kind::Literal, -1, v, wraps}; }
};

enum class BinOp { Add, Sub, Mul, FloorDiv, Mod, Gt, Lt };

const char* bin_op_token(BinOp op); // " + ", " - ", ...
const char* bin_op_symbol(BinOp op); // "+", "-", ...

struct BinaryExpr {
    BinOp op = BinOp::Add;
    Operand lhs;
    Operand rhs;
    bool operator==(const BinaryExpr&) const = default;
};

struct PowExpr {
    Operand base;
    int exponent = 2; // 2 or 3
    bool operator==(const PowExpr&) const = default;
};

// A bare operand as a full right-hand side is only legal when it carries at
// least one abs wrap, e.g. `t1 = abs(t0)`.
struct AbsExpr {
    Operand arg; // arg.abs_wraps >= 1
    bool operator==(const AbsExpr&) const = default;
};

using Expr = std::variant<BinaryExpr, PowExpr, AbsExpr>;

struct Statement;
using StmtList = std::vector<Statement>;

struct AssignStmt {
    int target = 0;
    Expr expr;
    bool operator==(const AssignStmt&) const = default;
};

struct LoopStmt {
    int count = 2; // constant repeat count in [2, 4]
    StmtList body;
    bool operator==(const LoopStmt&) const = default;
};

enum class CmpOp { Gt, Lt };

struct IfElseStmt {
    Operand lhs;
    CmpOp cmp = CmpOp::Gt;
    Operand rhs;
    StmtList then_body;
    StmtList else_body;
    bool operator==(const IfElseStmt&) const = default;
};

struct Statement {
    std::variant<AssignStmt, LoopStmt, IfElseStmt> node;
    bool operator==(const Statement&) const = default;
};

struct InputDomain {
    std::int64_t lo = -50; // inclusive
    std::int64_t hi = 50;  // exclusive

    bool operator==(const InputDomain&) const = default;
    bool contains(std::int64_t x) const { return x >= lo && x < hi; }
    std::int64_t size() const { return hi - lo; }
};

struct ArithProgram {
    std::string name;
    StmtList body;
    int return_temp = 0;
    // Max step count over the program's domain. Derived metadata: set by the
    // generator (and re-measurable), 0 when unknown (e.g. freshly parsed).
    int declared_length = 0;

    // Structural equality; declared_length is derived and excluded.
    bool operator==(const ArithProgram& other) const {
        return name == other.name && body == other.body && return_temp == other.return_temp;
    }
};

// Structural well-formedness: allowed literal ranges, non-empty bodies,
// nonzero division literals, every temporary assigned before first read.
// Returns human-readable violations; empty means valid.
std::vector<std::string> validate(const ArithProgram& program);

} // namespace pbb::arith

#include "pbb/arith/ast.hpp"

#include <set>

#include "pbb/arith/interpreter.hpp"

namespace pbb::arith {

const char* bin_op_token(BinOp op) {
    switch (op) {
        case BinOp::Add: return " + ";
        case BinOp::Sub: return " - ";
        case BinOp::Mul: return " * ";
        case BinOp::FloorDiv: return " // ";
        case BinOp::Mod: return " % ";
        case BinOp::Gt: return " > ";
        case BinOp::Lt: return " < ";
    }
    return " + ";
}

const char* bin_op_symbol(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::FloorDiv: return "//";
        case BinOp::Mod: return "%";
        case BinOp::Gt: return ">";
        case BinOp::Lt: return "<";
    }
    return "+";
}

namespace {

struct Validator {
    std::vector<std::string> violations;

    void note(const std::string& msg) { violations.push_back(msg); }

    void check_operand_read(const Operand& o, const std::set<int>& defined) {
        if (o.kind == Operand::Kind::Temp && defined.count(o.temp) == 0)
            note("temporary t" + std::to_string(o.temp) + " read before assignment");
        if (o.abs_wraps < 0) note("negative abs wrap count");
    }

    void check_expr(const Expr& e, const std::set<int>& defined) {
        if (const auto* bin = std::get_if<BinaryExpr>(&e)) {
            check_operand_read(bin->lhs, defined);
            check_operand_read(bin->rhs, defined);
            if ((bin->op == BinOp::FloorDiv || bin->op == BinOp::Mod)) {
                if (bin->rhs.kind != Operand::Kind::Literal || bin->rhs.abs_wraps != 0)
                    note("division/modulo right operand must be an integer literal");
                else if (bin->rhs.literal == 0)
                    note("division/modulo by zero literal");
            }
        } else if (const auto* pw = std::get_if<PowExpr>(&e)) {
            check_operand_read(pw->base, defined);
            if (pw->exponent != 2 && pw->exponent != 3) note("pow exponent must be 2 or 3");
            // `-3 ** 2` parses as -(3 ** 2) in the surface language, so a bare
            // negative literal base would diverge from the rendered source.
            if (pw->base.kind == Operand::Kind::Literal && pw->base.abs_wraps == 0 &&
                pw->base.literal < 0)
                note("negative literal pow base changes meaning in rendered source");
        } else {
            const auto& abs_expr = std::get<AbsExpr>(e);
            check_operand_read(abs_expr.arg, defined);
            if (abs_expr.arg.abs_wraps < 1) note("bare operand is not a valid expression");
        }
    }

    // Walks a block; `defined` is the set of temporaries assigned on every
    // path reaching the current point.
    void check_block(const StmtList& body, std::set<int>& defined) {
        for (const Statement& st : body) {
            if (const auto* assign = std::get_if<AssignStmt>(&st.node)) {
                check_expr(assign->expr, defined);
                defined.insert(assign->target);
            } else if (const auto* loop = std::get_if<LoopStmt>(&st.node)) {
                if (loop->count < 2 || loop->count > 4) note("loop count must be in [2,4]");
                if (loop->body.empty()) note("loop body must be non-empty");
                // count >= 2 means the body always executes; its assignments
                // are definite after the loop.
                check_block(loop->body, defined);
            } else {
                const auto& ife = std::get<IfElseStmt>(st.node);
                check_operand_read(ife.lhs, defined);
                check_operand_read(ife.rhs, defined);
                if (ife.then_body.empty() || ife.else_body.empty())
                    note("if/else bodies must be non-empty");
                std::set<int> then_defined = defined;
                std::set<int> else_defined = defined;
                check_block(ife.then_body, then_defined);
                check_block(ife.else_body, else_defined);
                for (const int t : then_defined)
                    if (else_defined.count(t) != 0) defined.insert(t);
            }
        }
    }
};

} // namespace

std::vector<std::string> validate(const ArithProgram& program) {
    Validator v;
    if (program.name.empty()) v.note("program name is empty");
    if (program.body.empty()) v.note("program body is empty");
    std::set<int> defined;
    v.check_block(program.body, defined);
    if (defined.count(program.return_temp) == 0)
        v.note("return temporary t" + std::to_string(program.return_temp) +
               " not assigned on all paths");
    return v.violations;
}

} // namespace pbb::arith

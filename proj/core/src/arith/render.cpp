#include "pbb/arith/render.hpp"

namespace pbb::arith {

namespace {

std::string indent(int level) { return std::string(static_cast<std::size_t>(level) * 4, ' '); }

std::string render_operand(const Operand& o) {
    std::string core;
    switch (o.kind) {
        case Operand::Kind::Input: core = "x"; break;
        case Operand::Kind::Temp: core = "t" + std::to_string(o.temp); break;
        case Operand::Kind::Literal: core = std::to_string(o.literal); break;
    }
    for (int i = 0; i < o.abs_wraps; ++i) core = "abs(" + core + ")";
    return core;
}

std::string render_expr(const Expr& e) {
    if (const auto* bin = std::get_if<BinaryExpr>(&e))
        return render_operand(bin->lhs) + bin_op_token(bin->op) + render_operand(bin->rhs);
    if (const auto* pw = std::get_if<PowExpr>(&e))
        return render_operand(pw->base) + " ** " + std::to_string(pw->exponent);
    return render_operand(std::get<AbsExpr>(e).arg);
}

void render_block(const StmtList& body, int level, std::string& out) {
    for (const Statement& st : body) {
        if (const auto* assign = std::get_if<AssignStmt>(&st.node)) {
            out += indent(level) + "t" + std::to_string(assign->target) + " = " +
                   render_expr(assign->expr) + "\n";
        } else if (const auto* loop = std::get_if<LoopStmt>(&st.node)) {
            out += indent(level) + "for _ in range(" + std::to_string(loop->count) + "):\n";
            render_block(loop->body, level + 1, out);
        } else {
            const auto& ife = std::get<IfElseStmt>(st.node);
            out += indent(level) + "if " + render_operand(ife.lhs) +
                   (ife.cmp == CmpOp::Gt ? " > " : " < ") + render_operand(ife.rhs) + ":\n";
            render_block(ife.then_body, level + 1, out);
            out += indent(level) + "else:\n";
            render_block(ife.else_body, level + 1, out);
        }
    }
}

} // namespace

std::string render_code(const ArithProgram& program) {
    std::string out = "def " + program.name + "(x):\n";
    render_block(program.body, 1, out);
    out += indent(1) + "return t" + std::to_string(program.return_temp) + "\n";
    return out;
}

namespace {

std::string nl_operand(const Operand& o) {
    std::string core;
    switch (o.kind) {
        case Operand::Kind::Input: core = "x"; break;
        case Operand::Kind::Temp: core = "t" + std::to_string(o.temp); break;
        case Operand::Kind::Literal: core = std::to_string(o.literal); break;
    }
    for (int i = 0; i < o.abs_wraps; ++i) core = "the absolute value of " + core;
    return core;
}

std::string nl_expr(const Expr& e) {
    if (const auto* bin = std::get_if<BinaryExpr>(&e)) {
        const std::string a = nl_operand(bin->lhs);
        const std::string b = nl_operand(bin->rhs);
        switch (bin->op) {
            case BinOp::Add:
                if (bin->lhs == bin->rhs) return "twice " + a;
                return "the sum of " + a + " and " + b;
            case BinOp::Sub: return a + " minus " + b;
            case BinOp::Mul: return "the product of " + a + " and " + b;
            case BinOp::FloorDiv:
                return a + " divided by " + b + ", rounded down toward negative infinity";
            case BinOp::Mod:
                return "the remainder of " + a + " divided by " + b +
                       " (with the remainder taking the sign of " + b + ")";
            case BinOp::Gt: return "1 if " + a + " is greater than " + b + ", and 0 otherwise";
            case BinOp::Lt: return "1 if " + a + " is less than " + b + ", and 0 otherwise";
        }
    }
    if (const auto* pw = std::get_if<PowExpr>(&e))
        return nl_operand(pw->base) + " raised to the power of " + std::to_string(pw->exponent);
    return nl_operand(std::get<AbsExpr>(e).arg);
}

std::string nl_clause(const Statement& st);

std::string nl_clauses(const StmtList& body) {
    std::string out;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i > 0) out += ", then ";
        out += nl_clause(body[i]);
    }
    return out;
}

std::string nl_clause(const Statement& st) {
    if (const auto* assign = std::get_if<AssignStmt>(&st.node))
        return "computes t" + std::to_string(assign->target) + " as " + nl_expr(assign->expr);
    if (const auto* loop = std::get_if<LoopStmt>(&st.node))
        return "repeats the following " + std::to_string(loop->count) +
               " times: " + nl_clauses(loop->body);
    const auto& ife = std::get<IfElseStmt>(st.node);
    return std::string("checks whether ") + nl_operand(ife.lhs) +
           (ife.cmp == CmpOp::Gt ? " is greater than " : " is less than ") + nl_operand(ife.rhs) +
           "; if so, it " + nl_clauses(ife.then_body) + "; otherwise, it " +
           nl_clauses(ife.else_body);
}

} // namespace

std::string render_nl(const ArithProgram& program) {
    std::string out = "A " + program.name + " is a process that takes an input value x.";
    for (const Statement& st : program.body) out += " It " + nl_clause(st) + ".";
    out += " Finally, it returns t" + std::to_string(program.return_temp) + ".";
    return out;
}

} // namespace pbb::arith

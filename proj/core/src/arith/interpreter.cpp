#include "pbb/arith/interpreter.hpp"

#include <cstdlib>

#include "pbb/common/errors.hpp"

namespace pbb::arith {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
    std::int64_t r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

namespace {

struct Machine {
    std::vector<std::int64_t> temps;
    std::vector<bool> assigned;
    std::int64_t input = 0;
    int steps = 0;
    ExecutionTrace* trace = nullptr; // optional step recording

    void record(const std::string& locator, const char* op,
                std::initializer_list<std::int64_t> operands, std::int64_t result) {
        ++steps;
        if (trace != nullptr) {
            TraceStep s;
            s.locator = locator;
            s.op = op;
            s.operands.assign(operands);
            s.result = result;
            trace->steps.push_back(std::move(s));
        }
    }

    std::int64_t check(std::int64_t v) const {
        if (v > kMagnitudeBound || v < -kMagnitudeBound)
            throw ArithmeticFault("value magnitude exceeds 10^12");
        return v;
    }

    std::int64_t base_value(const Operand& o) const {
        switch (o.kind) {
            case Operand::Kind::Input: return input;
            case Operand::Kind::Literal: return o.literal;
            case Operand::Kind::Temp:
                if (o.temp < 0 || static_cast<std::size_t>(o.temp) >= temps.size() ||
                    !assigned[static_cast<std::size_t>(o.temp)])
                    throw ArithmeticFault("read of unassigned temporary t" + std::to_string(o.temp));
                return temps[static_cast<std::size_t>(o.temp)];
        }
        return 0;
    }

    std::int64_t eval_operand(const Operand& o, const std::string& locator) {
        std::int64_t v = base_value(o);
        for (int i = 0; i < o.abs_wraps; ++i) {
            const std::int64_t r = check(v < 0 ? -v : v);
            record(locator, "abs", {v}, r);
            v = r;
        }
        return v;
    }

    std::int64_t apply_bin(BinOp op, std::int64_t a, std::int64_t b) {
        switch (op) {
            case BinOp::Add: return check(a + b);
            case BinOp::Sub: return check(a - b);
            case BinOp::Mul: {
                const __int128 wide = static_cast<__int128>(a) * static_cast<__int128>(b);
                if (wide > kMagnitudeBound || wide < -static_cast<__int128>(kMagnitudeBound))
                    throw ArithmeticFault("value magnitude exceeds 10^12");
                return static_cast<std::int64_t>(wide);
            }
            case BinOp::FloorDiv:
                if (b == 0) throw ArithmeticFault("floor division by zero");
                return check(floor_div(a, b));
            case BinOp::Mod:
                if (b == 0) throw ArithmeticFault("modulo by zero");
                return check(floor_mod(a, b));
            case BinOp::Gt: return a > b ? 1 : 0;
            case BinOp::Lt: return a < b ? 1 : 0;
        }
        return 0;
    }

    std::int64_t eval_expr(const Expr& e, const std::string& locator) {
        if (const auto* bin = std::get_if<BinaryExpr>(&e)) {
            const std::int64_t a = eval_operand(bin->lhs, locator);
            const std::int64_t b = eval_operand(bin->rhs, locator);
            const std::int64_t r = apply_bin(bin->op, a, b);
            record(locator, bin_op_symbol(bin->op), {a, b}, r);
            return r;
        }
        if (const auto* pw = std::get_if<PowExpr>(&e)) {
            const std::int64_t a = eval_operand(pw->base, locator);
            __int128 wide = static_cast<__int128>(a) * a;
            if (pw->exponent == 3) wide *= a;
            if (wide > kMagnitudeBound || wide < -static_cast<__int128>(kMagnitudeBound))
                throw ArithmeticFault("value magnitude exceeds 10^12");
            const auto r = static_cast<std::int64_t>(wide);
            record(locator, "**", {a, pw->exponent}, r);
            return r;
        }
        const auto& abs_expr = std::get<AbsExpr>(e);
        return eval_operand(abs_expr.arg, locator);
    }

    void store(int target, std::int64_t value) {
        if (target < 0) throw ArithmeticFault("negative temporary id");
        const auto idx = static_cast<std::size_t>(target);
        if (idx >= temps.size()) {
            temps.resize(idx + 1, 0);
            assigned.resize(idx + 1, false);
        }
        temps[idx] = value;
        assigned[idx] = true;
    }

    void exec_block(const StmtList& body, const std::string& prefix) {
        for (std::size_t i = 0; i < body.size(); ++i) {
            const std::string locator = prefix.empty() ? std::to_string(i)
                                                       : prefix + "." + std::to_string(i);
            const Statement& st = body[i];
            if (const auto* assign = std::get_if<AssignStmt>(&st.node)) {
                store(assign->target, eval_expr(assign->expr, locator));
            } else if (const auto* loop = std::get_if<LoopStmt>(&st.node)) {
                for (int it = 0; it < loop->count; ++it) exec_block(loop->body, locator);
            } else {
                const auto& ife = std::get<IfElseStmt>(st.node);
                const std::int64_t a = eval_operand(ife.lhs, locator);
                const std::int64_t b = eval_operand(ife.rhs, locator);
                const bool taken = ife.cmp == CmpOp::Gt ? a > b : a < b;
                record(locator, ife.cmp == CmpOp::Gt ? ">" : "<", {a, b}, taken ? 1 : 0);
                exec_block(taken ? ife.then_body : ife.else_body, locator);
            }
        }
    }

    std::int64_t run(const ArithProgram& program, std::int64_t x) {
        input = x;
        exec_block(program.body, "");
        const Operand ret = Operand::temp_ref(program.return_temp);
        return base_value(ret);
    }
};

} // namespace

std::int64_t run_unchecked(const ArithProgram& program, std::int64_t x) {
    Machine m;
    return m.run(program, x);
}

std::int64_t evaluate(const ArithProgram& program, std::int64_t x, const InputDomain& domain) {
    if (!domain.contains(x))
        throw DomainViolation("input " + std::to_string(x) + " outside domain [" +
                              std::to_string(domain.lo) + "," + std::to_string(domain.hi) + ")");
    return run_unchecked(program, x);
}

ExecutionTrace trace(const ArithProgram& program, std::int64_t x, const InputDomain& domain) {
    if (!domain.contains(x))
        throw DomainViolation("input " + std::to_string(x) + " outside domain [" +
                              std::to_string(domain.lo) + "," + std::to_string(domain.hi) + ")");
    ExecutionTrace t;
    Machine m;
    m.trace = &t;
    t.output = m.run(program, x);
    t.step_count = m.steps;
    return t;
}

int count_steps(const ArithProgram& program, std::int64_t x) {
    Machine m;
    m.run(program, x);
    return m.steps;
}

int measure_length(const ArithProgram& program, const InputDomain& domain) {
    int max_steps = 0;
    for (std::int64_t x = domain.lo; x < domain.hi; ++x) {
        const int n = count_steps(program, x);
        if (n > max_steps) max_steps = n;
    }
    return max_steps;
}

} // namespace pbb::arith

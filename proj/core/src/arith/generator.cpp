#include "pbb/arith/generator.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "pbb/arith/interpreter.hpp"
#include "pbb/arith/render.hpp"
#include "pbb/common/errors.hpp"

namespace pbb::arith {

namespace {

const std::vector<std::string> kOnsets = {
    "b", "bl", "br", "d",  "dr", "f", "fl", "fr", "g", "gl", "gr", "j",  "k", "kl",
    "kr", "l", "m",  "n",  "p",  "pl", "pr", "r", "s", "sk", "sl", "sn", "st", "t",
    "tr", "v", "w",  "z",  "zl", "qu"};
const std::vector<std::string> kNuclei = {"a",  "e",  "i",  "o",  "u",  "aa",
                                          "ee", "oo", "ai", "au", "ie", "ou"};
const std::vector<std::string> kCodas = {"b",  "bb", "ck", "d",  "ff", "g",  "k",  "l",
                                         "ll", "m",  "n",  "nd", "nk", "p",  "r",  "s",
                                         "st", "t",  "zz", "dd", "mp", "sh"};

} // namespace

std::string pseudoword(Rng& rng) {
    std::string word;
    const int syllables = rng.bernoulli(0.55) ? 2 : 3;
    for (int i = 0; i < syllables; ++i) {
        word += rng.pick(kOnsets);
        word += rng.pick(kNuclei);
        if (rng.bernoulli(0.45)) word += rng.pick(kCodas);
    }
    if (rng.bernoulli(0.35)) word += "le";
    if (rng.bernoulli(0.5)) word[0] = static_cast<char>(std::toupper(word[0]));
    return word;
}

namespace {

// Statement plan in step-count units. An assign's cost covers its abs wraps.
struct AssignPlan {
    int cost = 1; // 1 or 2
};
struct LoopPlan {
    int reps = 2;
    std::vector<AssignPlan> body;
};
struct IfElsePlan {
    std::vector<AssignPlan> then_body;
    std::vector<AssignPlan> else_body;
};

struct Plan {
    std::vector<std::variant<AssignPlan, LoopPlan, IfElsePlan>> stmts;
};

// Splits a budget into per-statement costs whose plan-level maximum trace
// equals the budget exactly, provided every conditional's longer arm is
// reachable. At most one conditional is planned: with several
// input-dependent branches the maxima interact and the exact-length
// rejection rate climbs steeply.
Plan plan_statements(Rng& rng, int budget) {
    Plan plan;
    int free = budget - 1; // final assign reserved
    bool used_if = false;
    while (free > 0) {
        const double roll = rng.uniform01();
        if (free >= 2 && roll < 0.22) { // loop
            LoopPlan loop;
            loop.reps = static_cast<int>(rng.uniform_int(2, std::min<std::int64_t>(4, free)));
            const int body_max = free / loop.reps;
            if (body_max >= 1) {
                const int body_total =
                    static_cast<int>(rng.uniform_int(1, std::min<std::int64_t>(body_max, 3)));
                int remaining = body_total;
                while (remaining > 0) {
                    AssignPlan a;
                    a.cost = (remaining >= 2 && rng.bernoulli(0.25)) ? 2 : 1;
                    remaining -= a.cost;
                    loop.body.push_back(a);
                }
                free -= loop.reps * body_total;
                plan.stmts.push_back(loop);
                continue;
            }
        }
        if (!used_if && free >= 2 && roll >= 0.22 && roll < 0.40) { // if/else
            IfElsePlan ife;
            const int arm_max = std::min(free - 1, 4);
            const int then_ops = static_cast<int>(rng.uniform_int(1, arm_max));
            const int else_ops = static_cast<int>(rng.uniform_int(1, arm_max));
            for (int i = 0; i < then_ops; ++i) ife.then_body.push_back({1});
            for (int i = 0; i < else_ops; ++i) ife.else_body.push_back({1});
            free -= 1 + std::max(then_ops, else_ops);
            plan.stmts.push_back(ife);
            used_if = true;
            continue;
        }
        AssignPlan a;
        a.cost = (free >= 2 && rng.bernoulli(0.18)) ? 2 : 1;
        free -= a.cost;
        plan.stmts.push_back(a);
    }
    return plan;
}

class Materializer {
public:
    Materializer(Rng& rng, const InputDomain& domain) : rng_(rng), domain_(domain) {}

    ArithProgram build(const Plan& plan, std::string name, int target_length) {
        ArithProgram program;
        program.name = std::move(name);
        program.declared_length = target_length;
        for (const auto& st : plan.stmts) {
            if (const auto* a = std::get_if<AssignPlan>(&st))
                program.body.push_back({make_assign(*a, defined_, false)});
            else if (const auto* l = std::get_if<LoopPlan>(&st))
                program.body.push_back({make_loop(*l)});
            else
                program.body.push_back({make_ifelse(std::get<IfElsePlan>(st))});
        }
        // Final statement: a fresh non-comparison assign reading the latest
        // value, so the returned temporary always holds a plain integer.
        AssignStmt last = make_final_assign();
        program.return_temp = last.target;
        program.body.push_back({std::move(last)});
        return program;
    }

private:
    int fresh_temp() { return next_temp_++; }

    Operand random_source(const std::vector<int>& scope, bool allow_literal = true) {
        const double roll = rng_.uniform01();
        if (!scope.empty() && roll < 0.45)
            return Operand::temp_ref(scope[rng_.uniform_index(scope.size())]);
        if (roll < 0.80 || !allow_literal) return Operand::input();
        return Operand::lit(rng_.uniform_int(-10, 10));
    }

    Operand divisor_literal() {
        const std::int64_t mag = rng_.uniform_int(2, 9);
        return Operand::lit(rng_.bernoulli(0.3) ? -mag : mag);
    }

    Expr make_expr(int cost, const std::vector<int>& scope, bool allow_compare,
                   const Operand* forced_operand) {
        const double form = rng_.uniform01();
        if (form < 0.12 && forced_operand == nullptr) { // standalone abs
            Operand arg = random_source(scope);
            arg.abs_wraps = cost; // abs(abs(..)) when cost 2
            return AbsExpr{arg};
        }
        if (form < 0.24) { // pow
            Operand base = forced_operand != nullptr ? *forced_operand : random_source(scope, false);
            if (base.kind == Operand::Kind::Literal && base.literal < 0)
                base.literal = -base.literal;
            if (cost >= 2) base.abs_wraps = cost - 1;
            return PowExpr{base, rng_.bernoulli(0.7) ? 2 : 3};
        }
        BinaryExpr bin;
        static const std::vector<BinOp> kOps = {BinOp::Add,      BinOp::Add, BinOp::Sub,
                                                BinOp::Sub,      BinOp::Mul, BinOp::Mul,
                                                BinOp::FloorDiv, BinOp::Mod, BinOp::Gt,
                                                BinOp::Lt};
        do {
            bin.op = rng_.pick(kOps);
        } while (!allow_compare && (bin.op == BinOp::Gt || bin.op == BinOp::Lt));
        bin.lhs = forced_operand != nullptr ? *forced_operand : random_source(scope, false);
        if (bin.op == BinOp::FloorDiv || bin.op == BinOp::Mod) {
            bin.rhs = divisor_literal();
        } else {
            bin.rhs = random_source(scope);
            if (forced_operand == nullptr && bin.lhs.kind == Operand::Kind::Literal &&
                bin.rhs.kind == Operand::Kind::Literal)
                bin.rhs = Operand::input(); // keep expressions input-dependent
        }
        if (cost >= 2) {
            if (rng_.bernoulli(0.5) && bin.lhs.kind != Operand::Kind::Literal)
                bin.lhs.abs_wraps = 1;
            else
                bin.rhs.abs_wraps = 1;
        }
        return bin;
    }

    AssignStmt make_assign(const AssignPlan& plan, std::vector<int>& scope, bool inside_loop) {
        AssignStmt assign;
        const bool reassign = inside_loop ? (!scope.empty() && rng_.bernoulli(0.55))
                                          : (!scope.empty() && rng_.bernoulli(0.10));
        if (reassign) {
            assign.target = scope[rng_.uniform_index(scope.size())];
            // Accumulator shape: the reassigned temp appears as an operand.
            const Operand self = Operand::temp_ref(assign.target);
            assign.expr = make_expr(plan.cost, scope, true, &self);
        } else {
            assign.expr = make_expr(plan.cost, scope, true, nullptr);
            assign.target = fresh_temp();
            scope.push_back(assign.target);
        }
        return assign;
    }

    LoopStmt make_loop(const LoopPlan& plan) {
        LoopStmt loop;
        loop.count = plan.reps;
        for (const AssignPlan& a : plan.body) loop.body.push_back({make_assign(a, defined_, true)});
        return loop;
    }

    IfElseStmt make_ifelse(const IfElsePlan& plan) {
        IfElseStmt ife;
        if (!defined_.empty() && rng_.bernoulli(0.35))
            ife.lhs = Operand::temp_ref(defined_[rng_.uniform_index(defined_.size())]);
        else
            ife.lhs = Operand::input();
        ife.cmp = rng_.bernoulli(0.5) ? CmpOp::Gt : CmpOp::Lt;
        ife.rhs = Operand::lit(rng_.uniform_int(-30, 30));

        const int base = next_temp_;
        std::vector<int> then_scope = defined_;
        next_temp_ = base;
        for (const AssignPlan& a : plan.then_body) ife.then_body.push_back({make_assign(a, then_scope, false)});
        const int then_top = next_temp_;

        std::vector<int> else_scope = defined_;
        next_temp_ = base;
        for (const AssignPlan& a : plan.else_body) ife.else_body.push_back({make_assign(a, else_scope, false)});
        const int else_top = next_temp_;

        next_temp_ = std::max(then_top, else_top);
        // Temporaries introduced by both arms are defined on every path.
        for (int t = base; t < std::min(then_top, else_top); ++t) defined_.push_back(t);
        return ife;
    }

    AssignStmt make_final_assign() {
        AssignStmt assign;
        const Operand latest =
            defined_.empty() ? Operand::input() : Operand::temp_ref(defined_.back());
        Expr expr = make_expr(1, defined_, false, &latest);
        assign.expr = std::move(expr);
        assign.target = fresh_temp();
        return assign;
    }

    Rng& rng_;
    const InputDomain& domain_;
    std::vector<int> defined_;
    int next_temp_ = 0;
};

// Locator paths of every conditional, to verify both arms get exercised.
void collect_branch_locators(const StmtList& body, const std::string& prefix,
                             std::set<std::string>& out) {
    for (std::size_t i = 0; i < body.size(); ++i) {
        const std::string locator =
            prefix.empty() ? std::to_string(i) : prefix + "." + std::to_string(i);
        if (const auto* loop = std::get_if<LoopStmt>(&body[i].node)) {
            collect_branch_locators(loop->body, locator, out);
        } else if (const auto* ife = std::get_if<IfElseStmt>(&body[i].node)) {
            out.insert(locator);
            collect_branch_locators(ife->then_body, locator, out);
            collect_branch_locators(ife->else_body, locator, out);
        }
    }
}

// Sweeps the whole domain: totality, exact max length, branch coverage.
bool sweep_accepts(const ArithProgram& program, int target_length, const InputDomain& domain) {
    std::set<std::string> branch_locators;
    collect_branch_locators(program.body, "", branch_locators);
    std::map<std::string, std::pair<bool, bool>> coverage;
    for (const auto& loc : branch_locators) coverage[loc] = {false, false};

    int max_steps = 0;
    for (std::int64_t x = domain.lo; x < domain.hi; ++x) {
        ExecutionTrace t;
        try {
            t = trace(program, x, domain);
        } catch (const ArithmeticFault&) {
            return false;
        }
        max_steps = std::max(max_steps, t.step_count);
        if (t.step_count > target_length) return false;
        for (const TraceStep& step : t.steps) {
            const auto it = coverage.find(step.locator);
            if (it != coverage.end() && (step.op == ">" || step.op == "<")) {
                if (step.result != 0)
                    it->second.first = true;
                else
                    it->second.second = true;
            }
        }
    }
    if (max_steps != target_length) return false;
    for (const auto& [loc, hits] : coverage)
        if (!hits.first || !hits.second) return false;
    return true;
}

} // namespace

ArithProgram generate_program(Rng& rng, std::string name, int target_length,
                              const InputDomain& domain, const GenOptions& options) {
    if (target_length < 1) throw ConfigError("target_length must be >= 1");
    if (domain.size() <= 0) throw ConfigError("input domain is empty");
    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        Rng attempt_rng = rng.child("attempt", static_cast<std::uint64_t>(attempt));
        Plan plan = plan_statements(attempt_rng, target_length);
        Materializer mat(attempt_rng, domain);
        ArithProgram candidate = mat.build(plan, name, target_length);
        if (sweep_accepts(candidate, target_length, domain)) return candidate;
    }
    throw GenerationExhausted("no valid program of length " + std::to_string(target_length) +
                              " found in " + std::to_string(options.max_attempts) + " attempts");
}

ArithProgram generate_program(std::uint64_t seed, int target_length, const InputDomain& domain,
                              const GenOptions& options) {
    Rng rng(seed);
    Rng name_rng = rng.child("name", 0);
    return generate_program(rng, pseudoword(name_rng), target_length, domain, options);
}

std::vector<ArithProgram> generate_corpus(std::uint64_t seed, int n_programs,
                                          const std::vector<int>& lengths,
                                          const InputDomain& domain, const GenOptions& options) {
    if (n_programs < 0) throw ConfigError("n_programs must be >= 0");
    if (lengths.empty()) throw ConfigError("length set is empty");
    std::vector<int> sorted_lengths = lengths;
    std::sort(sorted_lengths.begin(), sorted_lengths.end());
    sorted_lengths.erase(std::unique(sorted_lengths.begin(), sorted_lengths.end()),
                         sorted_lengths.end());

    Rng rng(seed);
    Rng name_rng = rng.child("names", 0);
    std::set<std::string> used_names;
    const auto fresh_name = [&]() {
        for (;;) {
            std::string w = pseudoword(name_rng);
            if (used_names.insert(w).second) return w;
        }
    };

    // Uniform across lengths, remainder dealt to the shortest lengths.
    const std::size_t n_lengths = sorted_lengths.size();
    const int per = n_programs / static_cast<int>(n_lengths);
    const int extra = n_programs % static_cast<int>(n_lengths);
    std::vector<int> targets;
    for (int round = 0;; ++round) {
        bool placed = false;
        for (std::size_t i = 0; i < n_lengths; ++i) {
            const int quota = per + (static_cast<int>(i) < extra ? 1 : 0);
            if (round < quota) {
                targets.push_back(sorted_lengths[i]);
                placed = true;
            }
        }
        if (!placed) break;
    }

    std::vector<ArithProgram> corpus;
    corpus.reserve(targets.size());
    std::set<std::string> seen_bodies;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const std::string name = fresh_name();
        Rng slot_rng = rng.child("program", i);
        ArithProgram program;
        bool accepted = false;
        for (int dup_round = 0; dup_round < 1000 && !accepted; ++dup_round) {
            Rng candidate_rng = slot_rng.child("dup", static_cast<std::uint64_t>(dup_round));
            program = generate_program(candidate_rng, name, targets[i], domain, options);
            ArithProgram keyed = program;
            keyed.name = "f";
            accepted = seen_bodies.insert(render_code(keyed)).second;
        }
        if (!accepted)
            throw GenerationExhausted("could not find a distinct program body for length " +
                                      std::to_string(targets[i]));
        corpus.push_back(std::move(program));
    }
    return corpus;
}

} // namespace pbb::arith

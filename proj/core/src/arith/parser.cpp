#include "pbb/arith/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>

#include "pbb/common/errors.hpp"

namespace pbb::arith {

namespace {

struct Line {
    int number = 0; // 1-based
    int indent = 0; // levels of 4 spaces
    std::string text; // content after indentation
};

class Parser {
public:
    explicit Parser(std::string_view source) {
        int number = 0;
        std::size_t pos = 0;
        while (pos <= source.size()) {
            const std::size_t nl = source.find('\n', pos);
            std::string_view raw = source.substr(
                pos, nl == std::string_view::npos ? source.size() - pos : nl - pos);
            ++number;
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
            if (raw.find_first_not_of(' ') != std::string_view::npos) {
                if (raw.find('\t') != std::string_view::npos)
                    fail(number, static_cast<int>(raw.find('\t')) + 1, "tab character in indentation");
                std::size_t spaces = 0;
                while (spaces < raw.size() && raw[spaces] == ' ') ++spaces;
                if (spaces % 4 != 0)
                    fail(number, static_cast<int>(spaces) + 1,
                         "indentation must be a multiple of 4 spaces");
                lines_.push_back({number, static_cast<int>(spaces / 4),
                                  std::string(raw.substr(spaces))});
            }
            if (nl == std::string_view::npos) break;
            pos = nl + 1;
        }
    }

    ArithProgram parse() {
        if (lines_.empty()) fail(1, 1, "empty source");
        ArithProgram program;
        program.name = parse_header(expect_line(0, "def"));
        program.body = parse_block(1);
        const Line& ret = peek_or_fail("expected 'return' statement");
        if (ret.indent != 1 || ret.text.rfind("return ", 0) != 0)
            fail(ret.number, ret.indent * 4 + 1, "expected 'return tN' at top level");
        advance();
        Cursor c{ret.text, 7, ret.number, ret.indent * 4};
        const Operand temp = parse_plain_temp(c);
        c.expect_end();
        program.return_temp = temp.temp;
        if (index_ < lines_.size())
            fail(lines_[index_].number, 1, "content after return statement");
        return program;
    }

private:
    struct Cursor {
        const std::string& text;
        std::size_t pos;
        int line;
        int col_offset; // columns consumed by indentation

        [[noreturn]] void fail_here(const std::string& msg) const {
            throw ParseError(msg, line, col_offset + static_cast<int>(pos) + 1);
        }
        bool at_end() const { return pos >= text.size(); }
        char peek() const { return pos < text.size() ? text[pos] : '\0'; }
        bool consume(std::string_view token) {
            if (text.compare(pos, token.size(), token) == 0) {
                pos += token.size();
                return true;
            }
            return false;
        }
        void expect(std::string_view token, const std::string& what) {
            if (!consume(token)) fail_here("expected " + what);
        }
        void expect_end() {
            if (!at_end()) fail_here("unexpected trailing characters");
        }
    };

    [[noreturn]] static void fail(int line, int col, const std::string& msg) {
        throw ParseError(msg, line, col);
    }

    const Line& expect_line(int indent, const std::string& what) {
        const Line& l = peek_or_fail("expected " + what);
        if (l.indent != indent) fail(l.number, l.indent * 4 + 1, "unexpected indentation");
        advance();
        return l;
    }

    const Line& peek_or_fail(const std::string& msg) {
        if (index_ >= lines_.size()) {
            const int last = lines_.empty() ? 1 : lines_.back().number;
            fail(last, 1, msg + " (unexpected end of input)");
        }
        return lines_[index_];
    }

    bool done() const { return index_ >= lines_.size(); }
    void advance() { ++index_; }

    std::string parse_header(const Line& l) {
        Cursor c{l.text, 0, l.number, l.indent * 4};
        c.expect("def ", "'def '");
        std::string name;
        if (!std::isalpha(static_cast<unsigned char>(c.peek())) && c.peek() != '_')
            c.fail_here("expected function name");
        while (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_') {
            name.push_back(c.peek());
            ++c.pos;
        }
        c.expect("(x):", "'(x):'");
        c.expect_end();
        return name;
    }

    StmtList parse_block(int level) {
        StmtList body;
        while (!done()) {
            const Line& l = lines_[index_];
            if (l.indent < level) break;
            if (l.indent > level) fail(l.number, l.indent * 4 + 1, "unexpected indentation");
            if (l.text.rfind("return ", 0) == 0) break;
            if (l.text.rfind("else:", 0) == 0) break;
            if (l.text.rfind("for ", 0) == 0) {
                body.push_back({parse_loop(l, level)});
            } else if (l.text.rfind("if ", 0) == 0) {
                body.push_back({parse_ifelse(l, level)});
            } else {
                advance();
                body.push_back({parse_assign(l)});
            }
        }
        return body;
    }

    LoopStmt parse_loop(const Line& l, int level) {
        advance();
        Cursor c{l.text, 0, l.number, l.indent * 4};
        c.expect("for _ in range(", "'for _ in range('");
        const char digit = c.peek();
        if (digit < '2' || digit > '4')
            c.fail_here("loop count must be 2, 3, or 4");
        ++c.pos;
        c.expect("):", "'):'");
        c.expect_end();
        LoopStmt loop;
        loop.count = digit - '0';
        loop.body = parse_block(level + 1);
        if (loop.body.empty()) fail(l.number, 1, "loop body is empty");
        return loop;
    }

    IfElseStmt parse_ifelse(const Line& l, int level) {
        advance();
        Cursor c{l.text, 0, l.number, l.indent * 4};
        c.expect("if ", "'if '");
        IfElseStmt ife;
        ife.lhs = parse_operand(c);
        if (c.consume(" > "))
            ife.cmp = CmpOp::Gt;
        else if (c.consume(" < "))
            ife.cmp = CmpOp::Lt;
        else
            c.fail_here("expected comparison ' > ' or ' < '");
        ife.rhs = parse_operand(c);
        c.expect(":", "':'");
        c.expect_end();
        ife.then_body = parse_block(level + 1);
        if (ife.then_body.empty()) fail(l.number, 1, "if body is empty");
        const Line& else_line = peek_or_fail("expected 'else:'");
        if (else_line.indent != level || else_line.text != "else:")
            fail(else_line.number, else_line.indent * 4 + 1, "expected 'else:'");
        advance();
        ife.else_body = parse_block(level + 1);
        if (ife.else_body.empty()) fail(else_line.number, 1, "else body is empty");
        return ife;
    }

    AssignStmt parse_assign(const Line& l) {
        Cursor c{l.text, 0, l.number, l.indent * 4};
        const Operand target = parse_plain_temp(c);
        c.expect(" = ", "' = '");
        AssignStmt assign;
        assign.target = target.temp;
        assign.expr = parse_expr(c);
        c.expect_end();
        return assign;
    }

    Expr parse_expr(Cursor& c) {
        const Operand first = parse_operand(c);
        if (c.at_end()) {
            if (first.abs_wraps < 1)
                c.fail_here("a bare operand is not a valid expression");
            return AbsExpr{first};
        }
        if (c.consume(" ** ")) {
            const char digit = c.peek();
            if (digit != '2' && digit != '3') c.fail_here("exponent must be 2 or 3");
            ++c.pos;
            if (first.kind == Operand::Kind::Literal && first.abs_wraps == 0 && first.literal < 0)
                c.fail_here("negative literal base of ** is ambiguous in the surface language");
            return PowExpr{first, digit - '0'};
        }
        if (c.peek() != ' ') c.fail_here("expected operator");
        ++c.pos;
        std::string op_token;
        while (!c.at_end() && c.peek() != ' ') {
            op_token.push_back(c.peek());
            ++c.pos;
        }
        std::optional<BinOp> op;
        if (op_token == "+") op = BinOp::Add;
        else if (op_token == "-") op = BinOp::Sub;
        else if (op_token == "*") op = BinOp::Mul;
        else if (op_token == "//") op = BinOp::FloorDiv;
        else if (op_token == "%") op = BinOp::Mod;
        else if (op_token == ">") op = BinOp::Gt;
        else if (op_token == "<") op = BinOp::Lt;
        if (!op) c.fail_here("unknown operator '" + op_token + "'");
        c.expect(" ", "space after operator");
        const Operand second = parse_operand(c);
        if ((*op == BinOp::FloorDiv || *op == BinOp::Mod)) {
            if (second.kind != Operand::Kind::Literal || second.abs_wraps != 0)
                c.fail_here("division/modulo right operand must be an integer literal");
            if (second.literal == 0) c.fail_here("division by zero literal");
        }
        return BinaryExpr{*op, first, second};
    }

    Operand parse_operand(Cursor& c) {
        if (c.consume("abs(")) {
            Operand inner = parse_operand(c);
            c.expect(")", "')'");
            ++inner.abs_wraps;
            return inner;
        }
        if (c.peek() == 'x' &&
            !std::isalnum(static_cast<unsigned char>(c.pos + 1 < c.text.size() ? c.text[c.pos + 1] : '\0'))) {
            ++c.pos;
            return Operand::input();
        }
        if (c.peek() == 't' && c.pos + 1 < c.text.size() &&
            std::isdigit(static_cast<unsigned char>(c.text[c.pos + 1])))
            return parse_plain_temp(c);
        if (c.peek() == '-' || std::isdigit(static_cast<unsigned char>(c.peek())))
            return parse_literal(c);
        c.fail_here("expected operand");
    }

    Operand parse_plain_temp(Cursor& c) {
        if (c.peek() != 't') c.fail_here("expected temporary");
        ++c.pos;
        const std::size_t start = c.pos;
        while (std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
        if (c.pos == start) c.fail_here("expected temporary index");
        int id = 0;
        const auto [ptr, ec] =
            std::from_chars(c.text.data() + start, c.text.data() + c.pos, id);
        if (ec != std::errc()) c.fail_here("temporary index out of range");
        (void)ptr;
        return Operand::temp_ref(id);
    }

    Operand parse_literal(Cursor& c) {
        const std::size_t start = c.pos;
        if (c.peek() == '-') ++c.pos;
        const std::size_t digits = c.pos;
        while (std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
        if (c.pos == digits) c.fail_here("expected integer literal");
        std::int64_t value = 0;
        const auto [ptr, ec] =
            std::from_chars(c.text.data() + start, c.text.data() + c.pos, value);
        if (ec != std::errc()) c.fail_here("integer literal out of range");
        (void)ptr;
        return Operand::lit(value);
    }

    std::vector<Line> lines_;
    std::size_t index_ = 0;
};

} // namespace

ArithProgram parse_code(std::string_view source) {
    return Parser(source).parse();
}

} // namespace pbb::arith

#include "detcalc/parser.hpp"

#include "detcalc/errors.hpp"

namespace detcalc {

std::unique_ptr<Expr> Expr::make_number(Rational v) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::Number;
    e->number = std::move(v);
    return e;
}

std::unique_ptr<Expr> Expr::make_negate(std::unique_ptr<Expr> operand) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::Negate;
    e->lhs = std::move(operand);
    return e;
}

std::unique_ptr<Expr> Expr::make_binary(LexItem::Kind op, std::unique_ptr<Expr> lhs,
                                        std::unique_ptr<Expr> rhs) {
    auto e = std::make_unique<Expr>();
    e->kind = Kind::Binary;
    e->op = op;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

namespace {

class Parser {
public:
    explicit Parser(const std::vector<LexItem>& items) : items_(items) {}

    std::unique_ptr<Expr> run() {
        if (items_.empty()) throw SyntaxError(0, "empty expression");
        auto e = parse_expr();
        if (pos_ != items_.size()) {
            if (items_[pos_].kind == LexItem::Kind::RBr) {
                throw SyntaxError(pos_, "unbalanced brackets: stray `)`");
            }
            throw SyntaxError(pos_, "unexpected item after a complete expression");
        }
        return e;
    }

private:
    const std::vector<LexItem>& items_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= items_.size(); }
    const LexItem& peek() const { return items_[pos_]; }

    std::unique_ptr<Expr> parse_expr() {
        auto lhs = parse_term();
        while (!at_end() &&
               (peek().kind == LexItem::Kind::Add || peek().kind == LexItem::Kind::Sub)) {
            const auto op = peek().kind;
            ++pos_;
            auto rhs = parse_term();
            lhs = Expr::make_binary(op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    std::unique_ptr<Expr> parse_term() {
        auto lhs = parse_factor();
        while (!at_end() &&
               (peek().kind == LexItem::Kind::Mul || peek().kind == LexItem::Kind::Div)) {
            const auto op = peek().kind;
            ++pos_;
            auto rhs = parse_factor();
            lhs = Expr::make_binary(op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    std::unique_ptr<Expr> parse_factor() {
        if (at_end()) throw SyntaxError(pos_, "expression ends after an operator");
        switch (peek().kind) {
        case LexItem::Kind::Number: {
            auto e = Expr::make_number(peek().value);
            ++pos_;
            return e;
        }
        case LexItem::Kind::LBr: {
            const std::size_t open = pos_;
            ++pos_;
            if (!at_end() && peek().kind == LexItem::Kind::RBr) {
                throw SyntaxError(pos_, "empty brackets");
            }
            auto e = parse_expr();
            if (at_end() || peek().kind != LexItem::Kind::RBr) {
                throw SyntaxError(open, "unbalanced brackets: `(` is never closed");
            }
            ++pos_;
            return e;
        }
        case LexItem::Kind::Sub: {
            // Unary minus, valid only at the start or right after `(`.
            if (pos_ != 0 && items_[pos_ - 1].kind != LexItem::Kind::LBr) {
                throw SyntaxError(pos_, "minus not allowed here; unary minus is accepted only "
                                        "at the start or after `(`");
            }
            ++pos_;
            return Expr::make_negate(parse_factor());
        }
        case LexItem::Kind::Add:
        case LexItem::Kind::Mul:
        case LexItem::Kind::Div:
            throw SyntaxError(pos_, "binary operator without a left operand");
        case LexItem::Kind::RBr:
            throw SyntaxError(pos_, "unexpected `)`");
        default:
            throw SyntaxError(pos_, "unexpected item");
        }
    }
};

} // namespace

ParseResult parse(const std::vector<LexItem>& items) {
    ParseResult result;
    std::vector<LexItem> effective;
    for (const auto& item : items) {
        if (item.kind == LexItem::Kind::Eq) {
            result.had_equals = true;
            break;
        }
        effective.push_back(item);
    }
    if (result.had_equals && effective.size() + 1 < items.size()) {
        result.ignored_after_equals = true;
    }
    result.expr = Parser(effective).run();
    return result;
}

Rational evaluate(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Number:
        return e.number;
    case Expr::Kind::Negate:
        return -evaluate(*e.lhs);
    case Expr::Kind::Binary: {
        const Rational lhs = evaluate(*e.lhs);
        const Rational rhs = evaluate(*e.rhs);
        switch (e.op) {
        case LexItem::Kind::Add: return lhs + rhs;
        case LexItem::Kind::Sub: return lhs - rhs;
        case LexItem::Kind::Mul: return lhs * rhs;
        default:
            if (rhs.is_zero()) throw DivisionByZero(render(*e.rhs));
            return lhs / rhs;
        }
    }
    }
    throw std::logic_error("unreachable");
}

namespace {

int precedence(const Expr& e) {
    if (e.kind != Expr::Kind::Binary) return 3;
    return e.op == LexItem::Kind::Add || e.op == LexItem::Kind::Sub ? 1 : 2;
}

char op_char(LexItem::Kind op) {
    switch (op) {
    case LexItem::Kind::Add: return '+';
    case LexItem::Kind::Sub: return '-';
    case LexItem::Kind::Mul: return '*';
    default: return '/';
    }
}

void render_into(const Expr& e, std::string& out);

void render_child(const Expr& child, bool needs_brackets, std::string& out) {
    if (needs_brackets) out += '(';
    render_into(child, out);
    if (needs_brackets) out += ')';
}

void render_into(const Expr& e, std::string& out) {
    switch (e.kind) {
    case Expr::Kind::Number:
        out += e.number.to_exact_decimal_string();
        return;
    case Expr::Kind::Negate:
        out += '-';
        render_child(*e.lhs, e.lhs->kind != Expr::Kind::Number, out);
        return;
    case Expr::Kind::Binary: {
        const int prec = precedence(e);
        const bool left_brackets =
            e.lhs->kind == Expr::Kind::Negate || precedence(*e.lhs) < prec;
        const bool right_brackets =
            e.rhs->kind == Expr::Kind::Negate || precedence(*e.rhs) <= prec;
        render_child(*e.lhs, left_brackets, out);
        out += op_char(e.op);
        render_child(*e.rhs, right_brackets, out);
        return;
    }
    }
}

} // namespace

std::string render(const Expr& e) {
    std::string out;
    render_into(e, out);
    return out;
}

SolvedLine solve_line(const ExpressionLine& line) {
    try {
        const auto items = assemble_numbers(line.tokens);
        const ParseResult parsed = parse(items);
        EvalOutcome outcome;
        outcome.value = evaluate(*parsed.expr);
        outcome.decimal = outcome.value.to_decimal_string();
        outcome.had_equals = parsed.had_equals;
        outcome.ignored_after_equals = parsed.ignored_after_equals;
        return SolvedLine{render(*parsed.expr), std::move(outcome)};
    } catch (const Error& cause) {
        throw LineSolveError(cause, line.y_min, line.y_max);
    }
}

} // namespace detcalc

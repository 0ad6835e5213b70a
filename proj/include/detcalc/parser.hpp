#pragma once

#include <memory>
#include <string>
#include <vector>

#include "detcalc/expression.hpp"
#include "detcalc/rational.hpp"

namespace detcalc {

/// Arithmetic expression tree. Number leaves hold exact rationals;
/// Negate uses `lhs` only.
struct Expr {
    enum class Kind { Number, Negate, Binary };

    Kind kind = Kind::Number;
    Rational number;
    LexItem::Kind op = LexItem::Kind::Add; ///< Binary only
    std::unique_ptr<Expr> lhs;
    std::unique_ptr<Expr> rhs;

    static std::unique_ptr<Expr> make_number(Rational v);
    static std::unique_ptr<Expr> make_negate(std::unique_ptr<Expr> operand);
    static std::unique_ptr<Expr> make_binary(LexItem::Kind op, std::unique_ptr<Expr> lhs,
                                             std::unique_ptr<Expr> rhs);
};

struct ParseResult {
    std::unique_ptr<Expr> expr;
    bool had_equals = false;
    /// Items appeared after the first equals sign and were ignored.
    bool ignored_after_equals = false;
};

/// Recursive-descent parse of the grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := Number | '(' expr ')' | '-' factor
/// with multiplication/division binding tighter than addition/subtraction
/// and left associativity throughout. Unary minus is accepted only at the
/// very start of the expression or directly after '('. The first equals
/// item terminates parsing; anything after it is ignored and flagged.
/// Throws SyntaxError with the offending item position.
ParseResult parse(const std::vector<LexItem>& items);

/// Exact evaluation. Throws DivisionByZero naming the divisor subtree.
Rational evaluate(const Expr& e);

/// Canonical ASCII rendering with minimal brackets; re-lexing and
/// re-parsing the output reproduces the tree.
std::string render(const Expr& e);

struct EvalOutcome {
    Rational value;
    std::string decimal; ///< <= 6 fractional digits, round-half-even, trimmed
    bool had_equals = false;
    bool ignored_after_equals = false;
};

struct SolvedLine {
    std::string text; ///< canonical rendering of the parsed expression
    EvalOutcome outcome;
};

/// assemble_numbers + parse + evaluate for one separated line. Expression
/// errors are re-thrown as LineSolveError tagged with the line's y band.
SolvedLine solve_line(const ExpressionLine& line);

} // namespace detcalc

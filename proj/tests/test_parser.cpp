#include <doctest.h>

#include <string>

#include "detcalc/errors.hpp"
#include "detcalc/parser.hpp"
#include "detcalc/synthgen.hpp"
#include "support/direct_evaluator.hpp"

using namespace detcalc;
using detcalc::testsupport::DirectEvaluator;

namespace {

Rational eval_text(const std::string& text) { return evaluate(*parse(lex_text(text)).expr); }

ExpressionLine line_of(const std::string& text, double y_min = 0.4, double y_max = 0.6) {
    ExpressionLine line;
    line.y_min = y_min;
    line.y_max = y_max;
    const auto symbols = symbols_from_text(text);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        line.tokens.push_back(
            Token{symbols[i], 0.05 + 0.01 * static_cast<double>(i), (y_min + y_max) / 2, {}});
    }
    return line;
}

bool same_tree(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Expr::Kind::Number: return a.number == b.number;
    case Expr::Kind::Negate: return same_tree(*a.lhs, *b.lhs);
    case Expr::Kind::Binary:
        return a.op == b.op && same_tree(*a.lhs, *b.lhs) && same_tree(*a.rhs, *b.rhs);
    }
    return false;
}

} // namespace

TEST_CASE("multiplication binds tighter than subtraction") {
    CHECK(eval_text("3-1*2") == Rational(1));
    // Never the left-to-right reading (3-1)*2 = 4.
    CHECK(eval_text("3-1*2") != Rational(4));
}

TEST_CASE("bracketed sums divide as a unit") {
    const Rational v = eval_text("(3+7+5)/4");
    CHECK(v == Rational(BigInt(15), BigInt(4)));
    CHECK(v.to_decimal_string() == "3.75");
}

TEST_CASE("evaluation matches desk results on the fixed corpus") {
    CHECK(eval_text("2+3") == Rational(5));
    CHECK(eval_text("21-15") == Rational(6));
    CHECK(eval_text("(42-47)/7") == Rational(BigInt(-5), BigInt(7)));
    CHECK(eval_text("(42-47)/7").to_decimal_string() == "-0.714286");
    CHECK(eval_text("(2.54+5.55)*2") == Rational(BigInt(809), BigInt(50)));
    CHECK(eval_text("(2+7-5)*33.2") == Rational(BigInt(664), BigInt(5)));
    CHECK(eval_text("9+4-2") == Rational(11));
    CHECK(eval_text("(3+4-5)/(6+7)") == Rational(BigInt(2), BigInt(13)));
}

TEST_CASE("leading binary operators are rejected with their position") {
    try {
        parse(lex_text("+3"));
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 0);
    }
    CHECK_THROWS_AS(parse(lex_text("*3")), SyntaxError);
}

TEST_CASE("bracket and operator misuse is a SyntaxError") {
    CHECK_THROWS_AS(parse(lex_text("(2+3")), SyntaxError);
    CHECK_THROWS_AS(parse(lex_text("2+3)")), SyntaxError);
    CHECK_THROWS_AS(parse(lex_text("()")), SyntaxError);
    CHECK_THROWS_AS(parse(lex_text("2++3")), SyntaxError);
    CHECK_THROWS_AS(parse(lex_text("2+")), SyntaxError);
    CHECK_THROWS_AS(parse(lex_text("2*")), SyntaxError);
    CHECK_THROWS_AS(parse(std::vector<LexItem>{}), SyntaxError);
}

TEST_CASE("unary minus only at the start or after an opening bracket") {
    CHECK(eval_text("-2*3") == Rational(-6));
    CHECK(eval_text("3*(-2)") == Rational(-6));
    CHECK(eval_text("-(2+3)") == Rational(-5));
    CHECK(eval_text("-(-2)") == Rational(2));
    CHECK_THROWS_AS(parse(lex_text("3+-2")), SyntaxError);
    CHECK_THROWS_AS(parse(lex_text("3--2")), SyntaxError);
    CHECK_THROWS_AS(parse(lex_text("3*-2")), SyntaxError);
}

TEST_CASE("equals terminates parsing; trailing items are flagged") {
    const ParseResult clean = parse(lex_text("2+3="));
    CHECK(clean.had_equals);
    CHECK_FALSE(clean.ignored_after_equals);
    CHECK(evaluate(*clean.expr) == Rational(5));

    const ParseResult noisy = parse(lex_text("2+3=9"));
    CHECK(noisy.had_equals);
    CHECK(noisy.ignored_after_equals);
    CHECK(evaluate(*noisy.expr) == Rational(5));

    const ParseResult plain = parse(lex_text("2+3"));
    CHECK_FALSE(plain.had_equals);
}

TEST_CASE("division by zero names the divisor") {
    try {
        eval_text("3/(2-2)");
        FAIL("expected DivisionByZero");
    } catch (const DivisionByZero& e) {
        CHECK(std::string(e.what()).find("2-2") != std::string::npos);
    }
    CHECK_THROWS_AS(eval_text("1/0"), DivisionByZero);
    CHECK(eval_text("0/3") == Rational(0));
}

TEST_CASE("solve_line composes assembly, parsing and evaluation") {
    const SolvedLine a = solve_line(line_of("9+4-2"));
    CHECK(a.text == "9+4-2");
    CHECK(a.outcome.value == Rational(11));
    CHECK(a.outcome.decimal == "11");

    const SolvedLine b = solve_line(line_of("(2.54+5.55)*2"));
    CHECK(b.outcome.value == Rational(BigInt(809), BigInt(50)));
    CHECK(b.outcome.decimal == "16.18");

    const SolvedLine c = solve_line(line_of("(3+4-5)/(6+7)"));
    CHECK(c.outcome.value == Rational(BigInt(2), BigInt(13)));
    CHECK(c.outcome.decimal == "0.153846");

    const SolvedLine d = solve_line(line_of("21-15="));
    CHECK(d.outcome.decimal == "6");
    CHECK(d.outcome.had_equals);
}

TEST_CASE("solve_line errors carry the line's band") {
    try {
        solve_line(line_of("3++2", 0.25, 0.35));
        FAIL("expected LineSolveError");
    } catch (const LineSolveError& e) {
        CHECK(e.kind() == "SyntaxError");
        CHECK(std::string(e.what()).find("y_band") != std::string::npos);
        CHECK(std::string(e.what()).find("0.25") != std::string::npos);
    }
    CHECK_THROWS_AS(solve_line(line_of(".5")), LineSolveError);
    CHECK_THROWS_AS(solve_line(line_of("3/(5-5)")), LineSolveError);
}

TEST_CASE("render emits canonical text that re-parses to the same tree") {
    CHECK(render(*parse(lex_text("3-1*2")).expr) == "3-1*2");
    CHECK(render(*parse(lex_text("(3+7+5)/4")).expr) == "(3+7+5)/4");
    CHECK(render(*parse(lex_text("3-(1*2)")).expr) == "3-1*2");
    CHECK(render(*parse(lex_text("3+(2-1)")).expr) == "3+(2-1)");
    CHECK(render(*parse(lex_text("(2.50+1)*3")).expr) == "(2.5+1)*3");
    CHECK(render(*parse(lex_text("-(2+3)")).expr) == "-(2+3)");
    CHECK(render(*parse(lex_text("1+(-2)*3")).expr) == "1+(-2)*3");

    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        const std::string text = random_expression(4, true, true, seed);
        const auto tree = parse(lex_text(text)).expr;
        const std::string canon = render(*tree);
        const auto reparsed = parse(lex_text(canon)).expr;
        REQUIRE(same_tree(*tree, *reparsed));
        // Canonical text is a fixpoint of render-parse.
        CHECK(render(*reparsed) == canon);
    }
}

TEST_CASE("random expressions evaluate identically to the direct evaluator") {
    int divisions_by_zero = 0;
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        const std::string text = random_expression(4, true, true, seed);
        Rational mine;
        bool mine_dbz = false;
        try {
            mine = eval_text(text);
        } catch (const DivisionByZero&) {
            mine_dbz = true;
        }
        Rational reference;
        bool reference_dbz = false;
        try {
            reference = DirectEvaluator(text).run();
        } catch (const DivisionByZero&) {
            reference_dbz = true;
        }
        REQUIRE(mine_dbz == reference_dbz);
        if (!mine_dbz) CHECK(mine == reference);
        divisions_by_zero += mine_dbz;
    }
    // The corpus should exercise the zero-divisor path at least once.
    CHECK(divisions_by_zero > 0);
}

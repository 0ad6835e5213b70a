#include "detcalc/expression.hpp"

#include <algorithm>
#include <tuple>

#include "detcalc/errors.hpp"

namespace detcalc {

namespace {

bool detection_x_before(const Detection& a, const Detection& b) {
    return std::tie(a.box.x_center, a.box.y_center, a.class_id) <
           std::tie(b.box.x_center, b.box.y_center, b.class_id);
}

} // namespace

std::vector<DetectionLine> partition_lines(std::vector<Detection> dets, double band_expansion) {
    std::sort(dets.begin(), dets.end(), detection_x_before);

    std::vector<DetectionLine> lines;
    std::vector<Detection> remaining = std::move(dets);
    while (!remaining.empty()) {
        const Detection& anchor = remaining.front();
        DetectionLine line;
        line.y_min = anchor.box.y_center - 0.5 * band_expansion * anchor.box.height;
        line.y_max = anchor.box.y_center + 0.5 * band_expansion * anchor.box.height;

        std::vector<Detection> rest;
        rest.reserve(remaining.size());
        for (const auto& d : remaining) {
            if (d.box.y_center >= line.y_min && d.box.y_center <= line.y_max) {
                line.members.push_back(d);
            } else {
                rest.push_back(d);
            }
        }
        remaining = std::move(rest);
        lines.push_back(std::move(line));
    }
    return lines;
}

std::vector<Token> tokens_from_detections(const std::vector<Detection>& line,
                                          const ClassMap& class_map) {
    std::vector<Detection> sorted = line;
    std::sort(sorted.begin(), sorted.end(), detection_x_before);
    std::vector<Token> tokens;
    tokens.reserve(sorted.size());
    for (const auto& d : sorted) {
        tokens.push_back(Token{class_map.symbol_of(d.class_id), d.box.x_center, d.box.y_center, d});
    }
    return tokens;
}

std::vector<ExpressionLine> separate_expressions(std::vector<Detection> dets,
                                                 const ClassMap& class_map,
                                                 double band_expansion) {
    std::vector<ExpressionLine> out;
    for (auto& line : partition_lines(std::move(dets), band_expansion)) {
        out.push_back(
            ExpressionLine{tokens_from_detections(line.members, class_map), line.y_min, line.y_max});
    }
    return out;
}

namespace {

bool is_number_part(Symbol s) { return is_digit(s) || s == Symbol::Dot; }

LexItem::Kind item_kind(Symbol s) {
    switch (s) {
    case Symbol::Add: return LexItem::Kind::Add;
    case Symbol::Sub: return LexItem::Kind::Sub;
    case Symbol::Mul: return LexItem::Kind::Mul;
    case Symbol::Div: return LexItem::Kind::Div;
    case Symbol::LBr: return LexItem::Kind::LBr;
    case Symbol::RBr: return LexItem::Kind::RBr;
    default: return LexItem::Kind::Eq;
    }
}

/// Builds the literal for one digit/dot run and validates the decimal
/// point placement within it.
std::string literal_from_run(const std::vector<Symbol>& run) {
    std::string literal;
    bool seen_dot = false;
    for (std::size_t i = 0; i < run.size(); ++i) {
        if (run[i] == Symbol::Dot) {
            if (seen_dot) throw MalformedNumber("two decimal points in one number");
            if (i == 0 || !is_digit(run[i - 1])) {
                throw MalformedNumber("decimal point not preceded by a digit");
            }
            if (i + 1 == run.size() || !is_digit(run[i + 1])) {
                throw MalformedNumber("decimal point not followed by a digit");
            }
            seen_dot = true;
            literal += '.';
        } else {
            literal += static_cast<char>('0' + digit_value(run[i]));
        }
    }
    return literal;
}

std::vector<LexItem> items_from_symbols(const std::vector<Symbol>& symbols) {
    std::vector<LexItem> items;
    std::vector<Symbol> run;
    auto flush_run = [&]() {
        if (run.empty()) return;
        std::string literal = literal_from_run(run);
        Rational value = Rational::from_decimal(literal);
        items.push_back(LexItem::number(std::move(value), std::move(literal)));
        run.clear();
    };
    for (const Symbol s : symbols) {
        if (is_number_part(s)) {
            run.push_back(s);
        } else {
            flush_run();
            items.push_back(LexItem::of(item_kind(s)));
        }
    }
    flush_run();
    return items;
}

} // namespace

std::vector<LexItem> assemble_numbers(const std::vector<Token>& tokens) {
    std::vector<Symbol> symbols;
    symbols.reserve(tokens.size());
    for (const auto& t : tokens) symbols.push_back(t.kind);
    return items_from_symbols(symbols);
}

std::vector<LexItem> lex_text(const std::string& text) {
    return items_from_symbols(symbols_from_text(text));
}

} // namespace detcalc

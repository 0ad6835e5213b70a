#pragma once

#include <string>
#include <vector>

#include "detcalc/rational.hpp"
#include "detcalc/records.hpp"

namespace detcalc {

/// A detected math symbol with its position.
struct Token {
    Symbol kind = Symbol::D0;
    double x_center = 0.0;
    double y_center = 0.0;
    Detection source;
};

/// Detections grouped into one horizontal line, members sorted ascending
/// by x_center. The band is the vertical extent of the line's leftmost
/// (anchor) detection.
struct DetectionLine {
    std::vector<Detection> members;
    double y_min = 0.0;
    double y_max = 0.0;
};

/// One expression's tokens, sorted ascending by x_center, with the
/// anchor-derived vertical band.
struct ExpressionLine {
    std::vector<Token> tokens;
    double y_min = 0.0;
    double y_max = 0.0;
};

/// Partitions one image's detections into horizontal lines: repeatedly
/// take the leftmost remaining detection as anchor, form the band
/// [y_center - e*height/2, y_center + e*height/2] from it (e is the band
/// expansion factor, 1.0 by default), and move every remaining detection
/// whose y_center lies inside the band (inclusive) into one line. Lines
/// come back in anchor-discovery order. Every input detection lands in
/// exactly one line. Equal x_center ties sort by (y_center, class id).
std::vector<DetectionLine> partition_lines(std::vector<Detection> dets,
                                           double band_expansion = 1.0);

/// Maps one line's detections to tokens, sorted ascending by x_center
/// with ties broken by (y_center, class id).
std::vector<Token> tokens_from_detections(const std::vector<Detection>& line,
                                          const ClassMap& class_map);

/// partition_lines + tokens_from_detections.
std::vector<ExpressionLine> separate_expressions(std::vector<Detection> dets,
                                                 const ClassMap& class_map,
                                                 double band_expansion = 1.0);

/// A lexical item: a complete number or a single operator/bracket/equals.
struct LexItem {
    enum class Kind { Number, Add, Sub, Mul, Div, LBr, RBr, Eq };
    Kind kind = Kind::Number;
    Rational value;      ///< Number only
    std::string literal; ///< Number only: the digit/dot run as written

    static LexItem number(Rational v, std::string text) {
        return {Kind::Number, std::move(v), std::move(text)};
    }
    static LexItem of(Kind k) { return {k, Rational(), {}}; }
};

/// Merges maximal runs of digit/decimal-point tokens into Number items
/// read left to right; everything else maps one-to-one. Throws
/// MalformedNumber when a run holds two decimal points or a point that is
/// not between two digits of the run.
std::vector<LexItem> assemble_numbers(const std::vector<Token>& tokens);

/// Lexes expression text ("(2.54+5.55)*2") straight to items; the same
/// digit-run rules as assemble_numbers apply.
std::vector<LexItem> lex_text(const std::string& text);

} // namespace detcalc

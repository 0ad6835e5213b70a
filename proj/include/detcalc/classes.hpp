#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "detcalc/errors.hpp"

namespace detcalc {

inline constexpr int kNumClasses = 18;

/// The 18-symbol vocabulary: Bengali digits 0-9 plus the four arithmetic
/// operators, brackets, equals sign and decimal point.
enum class Symbol : int {
    D0 = 0, D1, D2, D3, D4, D5, D6, D7, D8, D9,
    Add, Sub, Mul, Div, LBr, RBr, Eq, Dot,
};

inline bool valid_class_id(long id) { return id >= 0 && id < kNumClasses; }

inline bool is_digit(Symbol s) { return static_cast<int>(s) <= static_cast<int>(Symbol::D9); }

/// Numeric value 0-9 for digit symbols, -1 otherwise.
inline int digit_value(Symbol s) { return is_digit(s) ? static_cast<int>(s) : -1; }

/// ASCII spelling used in expression text: '0'..'9' + - * / ( ) = .
char symbol_char(Symbol s);

/// Inverse of symbol_char. Returns false on characters outside the vocabulary.
bool symbol_from_char(char c, Symbol& out);

/// Config-file name of a symbol: d0..d9, add, sub, mul, div, lbr, rbr, eq, dot.
const std::string& symbol_name(Symbol s);

/// Assignment of the 18 class ids to symbols. The canonical mapping is
/// identity-ordered (ids 0-9 are the digits, 10-17 the operators in the
/// order add, sub, mul, div, lbr, rbr, eq, dot); annotation conventions
/// that differ can be loaded from a class-map config file.
class ClassMap {
public:
    /// Canonical default mapping.
    static ClassMap standard();

    /// Loads lines `<class_id> <symbol-name>`; all 18 ids must be covered
    /// exactly once. Throws BadClassMap on any violation.
    static ClassMap from_file(const std::filesystem::path& path);

    Symbol symbol_of(int class_id) const { return symbol_of_.at(static_cast<std::size_t>(class_id)); }
    int id_of(Symbol s) const { return id_of_.at(static_cast<std::size_t>(s)); }

    friend bool operator==(const ClassMap&, const ClassMap&) = default;

private:
    std::array<Symbol, kNumClasses> symbol_of_{};
    std::array<int, kNumClasses> id_of_{};

    void rebuild_inverse();
};

/// Splits expression text into symbols, one per character; spaces are
/// skipped. Throws SyntaxError on characters outside the vocabulary.
std::vector<Symbol> symbols_from_text(const std::string& text);

} // namespace detcalc

#include "detcalc/classes.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace detcalc {

namespace {

constexpr char kChars[kNumClasses + 1] = "0123456789+-*/()=.";

const std::array<std::string, kNumClasses> kNames = {
    "d0", "d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8", "d9",
    "add", "sub", "mul", "div", "lbr", "rbr", "eq", "dot",
};

} // namespace

char symbol_char(Symbol s) { return kChars[static_cast<int>(s)]; }

bool symbol_from_char(char c, Symbol& out) {
    for (int i = 0; i < kNumClasses; ++i) {
        if (kChars[i] == c) {
            out = static_cast<Symbol>(i);
            return true;
        }
    }
    return false;
}

const std::string& symbol_name(Symbol s) { return kNames.at(static_cast<std::size_t>(s)); }

void ClassMap::rebuild_inverse() {
    for (int id = 0; id < kNumClasses; ++id) {
        id_of_[static_cast<std::size_t>(symbol_of_[static_cast<std::size_t>(id)])] = id;
    }
}

ClassMap ClassMap::standard() {
    ClassMap m;
    for (int id = 0; id < kNumClasses; ++id) {
        m.symbol_of_[static_cast<std::size_t>(id)] = static_cast<Symbol>(id);
    }
    m.rebuild_inverse();
    return m;
}

ClassMap ClassMap::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw BadClassMap("cannot open " + path.string());

    std::map<std::string, Symbol> by_name;
    for (int i = 0; i < kNumClasses; ++i) {
        by_name[kNames[static_cast<std::size_t>(i)]] = static_cast<Symbol>(i);
    }

    ClassMap m;
    std::array<bool, kNumClasses> seen_id{};
    std::array<bool, kNumClasses> seen_symbol{};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        long id = -1;
        std::string name;
        if (!(fields >> id >> name)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue; // blank
            throw BadClassMap(path.string() + ":" + std::to_string(line_no) +
                              ": expected `<class_id> <symbol-name>`");
        }
        std::string extra;
        if (fields >> extra) {
            throw BadClassMap(path.string() + ":" + std::to_string(line_no) + ": trailing field `" +
                              extra + "`");
        }
        if (!valid_class_id(id)) {
            throw BadClassMap(path.string() + ":" + std::to_string(line_no) + ": class id " +
                              std::to_string(id) + " outside [0, 17]");
        }
        auto it = by_name.find(name);
        if (it == by_name.end()) {
            throw BadClassMap(path.string() + ":" + std::to_string(line_no) +
                              ": unknown symbol name `" + name + "`");
        }
        if (seen_id[static_cast<std::size_t>(id)]) {
            throw BadClassMap(path.string() + ":" + std::to_string(line_no) + ": class id " +
                              std::to_string(id) + " mapped twice");
        }
        if (seen_symbol[static_cast<std::size_t>(it->second)]) {
            throw BadClassMap(path.string() + ":" + std::to_string(line_no) + ": symbol `" + name +
                              "` mapped twice");
        }
        seen_id[static_cast<std::size_t>(id)] = true;
        seen_symbol[static_cast<std::size_t>(it->second)] = true;
        m.symbol_of_[static_cast<std::size_t>(id)] = it->second;
    }
    for (int id = 0; id < kNumClasses; ++id) {
        if (!seen_id[static_cast<std::size_t>(id)]) {
            throw BadClassMap(path.string() + ": class id " + std::to_string(id) + " not mapped");
        }
    }
    m.rebuild_inverse();
    return m;
}

std::vector<Symbol> symbols_from_text(const std::string& text) {
    std::vector<Symbol> out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == ' ' || c == '\t') continue;
        Symbol s;
        if (!symbol_from_char(c, s)) {
            throw SyntaxError(i, std::string("character `") + c + "` is not in the vocabulary");
        }
        out.push_back(s);
    }
    return out;
}

} // namespace detcalc

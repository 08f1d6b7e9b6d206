#pragma once

// Internal tokenizer shared by the PD and graph-PD parsers.

#include "khk/diagram.hpp"
#include "khk/errors.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

namespace khk::pdtext {

struct Token {
    std::string text;
    int line;
    int col;
};

inline std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '\n') { ++line; col = 1; ++i; continue; }
        if (ch == ' ' || ch == '\t' || ch == '\r') { ++col; ++i; continue; }
        if (ch == '#') { // comment to end of line
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        int tcol = col;
        size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) { ++j; ++col; }
        out.push_back({text.substr(i, j - i), line, tcol});
        i = j;
    }
    return out;
}

[[noreturn]] inline void syntax_error(const Token& t, const std::string& what) {
    throw ParseError("line " + std::to_string(t.line) + ", col " + std::to_string(t.col) +
                     ": " + what + " (got '" + t.text + "')");
}

// labels of a record like "X(1,2,3,4)"; open = position of '('
inline std::vector<ArcLabel> parse_label_list(const Token& t, size_t open) {
    if (t.text.back() != ')') syntax_error(t, "expected closing ')'");
    std::vector<ArcLabel> labels;
    std::string body = t.text.substr(open + 1, t.text.size() - open - 2);
    if (body.empty()) return labels;
    if (body.back() == ',') syntax_error(t, "trailing comma");
    std::istringstream is(body);
    std::string field;
    while (std::getline(is, field, ',')) {
        if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos)
            syntax_error(t, "expected positive integer label");
        unsigned long v = std::stoul(field);
        if (v == 0 || v > 0xffffffffUL) syntax_error(t, "label out of range");
        labels.push_back(static_cast<ArcLabel>(v));
    }
    return labels;
}

} // namespace khk::pdtext

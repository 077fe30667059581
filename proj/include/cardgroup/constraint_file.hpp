#pragma once

// Line-oriented constraint files:
//
//     # grouping for nine indices
//     n = 9
//     M = 2,2,1          position k holds the number of size-k groups
//     C[2] = {8}         one pinned set per line, repeatable per size
//     C[3] = {9}
//     dummy = 8,9        optional presentation labels
//
// Set elements must be written in increasing order; the parser rejects
// rather than reorders. Errors carry 1-based line numbers.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cardgroup/errors.hpp"
#include "cardgroup/grouping.hpp"

namespace cardgroup {

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<int> parse_int_list(const std::string& body, std::size_t line) {
    std::vector<int> out;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line) + ": bad number '" + tok + "'");
        }
        tok.clear();
    };
    for (char ch : body) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch)))
            flush();
        else if (std::isdigit(static_cast<unsigned char>(ch)))
            tok.push_back(ch);
        else
            throw ParseError("line " + std::to_string(line) + ": unexpected character '" +
                             std::string(1, ch) + "'");
    }
    flush();
    return out;
}

}  // namespace detail

inline Constraint parse_constraint_text(const std::string& text) {
    Constraint c;
    bool saw_n = false, saw_m = false;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;

    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        if (auto hash = s.find('#'); hash != std::string::npos) s = s.substr(0, hash);
        s = detail::strip(s);
        if (s.empty()) continue;

        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line) + ": expected 'key = value'");
        std::string key = detail::strip(s.substr(0, eq));
        std::string value = detail::strip(s.substr(eq + 1));

        if (key == "n") {
            if (saw_n) throw ParseError("line " + std::to_string(line) + ": duplicate n");
            saw_n = true;
            try {
                c.n = std::stoi(value);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(line) + ": bad n '" + value + "'");
            }
        } else if (key == "M") {
            if (saw_m) throw ParseError("line " + std::to_string(line) + ": duplicate M");
            saw_m = true;
            std::vector<int> counts = detail::parse_int_list(value, line);
            if (counts.empty())
                throw ParseError("line " + std::to_string(line) + ": M needs at least one count");
            for (std::size_t k = 0; k < counts.size(); ++k)
                if (counts[k] != 0) c.group_counts[static_cast<int>(k) + 1] = counts[k];
        } else if (key == "dummy") {
            c.dummies = detail::parse_int_list(value, line);
        } else if (key.size() > 3 && key.substr(0, 2) == "C[" && key.back() == ']') {
            int k = 0;
            try {
                k = std::stoi(key.substr(2, key.size() - 3));
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(line) + ": bad size in '" + key + "'");
            }
            if (k < 1)
                throw ParseError("line " + std::to_string(line) + ": C size must be positive");
            if (value.size() < 2 || value.front() != '{' || value.back() != '}')
                throw ParseError("line " + std::to_string(line) + ": C set must be {..}");
            std::vector<int> set =
                detail::parse_int_list(value.substr(1, value.size() - 2), line);
            if (set.empty())
                throw ParseError("line " + std::to_string(line) + ": empty constraint set");
            for (std::size_t i = 0; i + 1 < set.size(); ++i)
                if (set[i] >= set[i + 1])
                    throw ParseError("line " + std::to_string(line) +
                                     ": set elements must be strictly increasing");
            c.together[k].push_back(set);
        } else {
            throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }
    if (!saw_n) throw ParseError("line " + std::to_string(line) + ": missing 'n ='");
    if (!saw_m) throw ParseError("line " + std::to_string(line) + ": missing 'M ='");

    auto bad = validate_constraint(c);
    if (!bad.empty()) {
        std::string msg;
        for (const auto& b : bad) {
            if (!msg.empty()) msg += "; ";
            msg += b;
        }
        throw ParseError("line " + std::to_string(line) + ": invalid constraint: " + msg);
    }
    return c;
}

inline Constraint load_constraint_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open constraint file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_constraint_text(buf.str());
}

}  // namespace cardgroup

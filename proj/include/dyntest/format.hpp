#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace dyntest {

// Shortest decimal form that round-trips through the lexer back to the same
// double. Integral values get a trailing ".0" so they re-parse as floats.
inline std::string format_float(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

inline std::string format_int(std::int64_t v) { return std::to_string(v); }

// Quote and escape a string the way the lexer reads it.
inline std::string quote_string(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

}  // namespace dyntest

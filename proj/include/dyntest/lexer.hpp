#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "dyntest/diag.hpp"

namespace dyntest {

enum class Tok {
    End,
    Newline,
    Name,
    IntLit,
    FloatLit,
    StrLit,
    // keywords
    KwDef,
    KwClass,
    KwIf,
    KwElif,
    KwElse,
    KwWhile,
    KwReturn,
    KwAnd,
    KwOr,
    KwNot,
    KwIs,
    KwIn,
    KwTrue,
    KwFalse,
    KwNone,
    // punctuation
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Dot,
    Arrow,
    Assign,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;       // names, string literal value (unescaped)
    std::int64_t int_val = 0;
    double float_val = 0.0;
    SourcePos pos;
};

// Hand-rolled lexer for `.dyn` source. Newlines are significant statement
// separators except inside parentheses; `#` starts a line comment.
class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> tokenize() {
        std::vector<Token> out;
        while (true) {
            Token t = next();
            // collapse runs of newlines
            if (t.kind == Tok::Newline && !out.empty() && out.back().kind == Tok::Newline)
                continue;
            bool end = t.kind == Tok::End;
            out.push_back(std::move(t));
            if (end) break;
        }
        return out;
    }

private:
    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
    int paren_depth_ = 0;

    char peek(std::size_t ahead = 0) const {
        return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
    }
    char advance() {
        char c = src_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    bool at_end() const { return i_ >= src_.size(); }
    SourcePos here() const { return {line_, col_}; }

    Token make(Tok k) {
        Token t;
        t.kind = k;
        t.pos = here();
        return t;
    }

    Token next() {
        // skip spaces, comments, and (inside parens) newlines
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else if (c == '\n' && paren_depth_ > 0) {
                advance();
            } else {
                break;
            }
        }
        if (at_end()) return make(Tok::End);

        SourcePos start = here();
        char c = advance();
        Token t;
        t.pos = start;

        switch (c) {
            case '\n': t.kind = Tok::Newline; return t;
            case '(': ++paren_depth_; t.kind = Tok::LParen; return t;
            case ')':
                if (paren_depth_ > 0) --paren_depth_;
                t.kind = Tok::RParen;
                return t;
            case '{': t.kind = Tok::LBrace; return t;
            case '}': t.kind = Tok::RBrace; return t;
            case ',': t.kind = Tok::Comma; return t;
            case ':': t.kind = Tok::Colon; return t;
            case '.': t.kind = Tok::Dot; return t;
            case '+': t.kind = Tok::Plus; return t;
            case '*': t.kind = Tok::Star; return t;
            case '/': t.kind = Tok::Slash; return t;
            case '%': t.kind = Tok::Percent; return t;
            case '-':
                if (peek() == '>') {
                    advance();
                    t.kind = Tok::Arrow;
                } else {
                    t.kind = Tok::Minus;
                }
                return t;
            case '=':
                if (peek() == '=') {
                    advance();
                    t.kind = Tok::Eq;
                } else {
                    t.kind = Tok::Assign;
                }
                return t;
            case '!':
                if (peek() == '=') {
                    advance();
                    t.kind = Tok::Ne;
                    return t;
                }
                throw SyntaxError("unexpected character '!'", start);
            case '<':
                if (peek() == '=') {
                    advance();
                    t.kind = Tok::Le;
                } else {
                    t.kind = Tok::Lt;
                }
                return t;
            case '>':
                if (peek() == '=') {
                    advance();
                    t.kind = Tok::Ge;
                } else {
                    t.kind = Tok::Gt;
                }
                return t;
            case '"': return lex_string(start);
            default: break;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(c, start);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_name(c, start);
        throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }

    Token lex_string(SourcePos start) {
        Token t;
        t.kind = Tok::StrLit;
        t.pos = start;
        while (true) {
            if (at_end() || peek() == '\n')
                throw SyntaxError("unterminated string literal", start);
            char c = advance();
            if (c == '"') break;
            if (c == '\\') {
                if (at_end()) throw SyntaxError("unterminated string literal", start);
                char e = advance();
                switch (e) {
                    case 'n': t.text.push_back('\n'); break;
                    case 't': t.text.push_back('\t'); break;
                    case 'r': t.text.push_back('\r'); break;
                    case '"': t.text.push_back('"'); break;
                    case '\\': t.text.push_back('\\'); break;
                    default:
                        throw SyntaxError(std::string("unknown escape '\\") + e + "'", start);
                }
            } else {
                t.text.push_back(c);
            }
        }
        return t;
    }

    Token lex_number(char first, SourcePos start) {
        std::string text(1, first);
        bool is_float = false;
        while (std::isdigit(static_cast<unsigned char>(peek()))) text.push_back(advance());
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            is_float = true;
            text.push_back(advance());
            while (std::isdigit(static_cast<unsigned char>(peek()))) text.push_back(advance());
        }
        if (peek() == 'e' || peek() == 'E') {
            char sign = peek(1);
            if (std::isdigit(static_cast<unsigned char>(sign)) ||
                ((sign == '+' || sign == '-') && std::isdigit(static_cast<unsigned char>(peek(2))))) {
                is_float = true;
                text.push_back(advance());
                if (peek() == '+' || peek() == '-') text.push_back(advance());
                while (std::isdigit(static_cast<unsigned char>(peek()))) text.push_back(advance());
            }
        }
        Token t;
        t.pos = start;
        if (is_float) {
            t.kind = Tok::FloatLit;
            t.float_val = std::strtod(text.c_str(), nullptr);
        } else {
            t.kind = Tok::IntLit;
            errno = 0;
            char* end = nullptr;
            long long v = std::strtoll(text.c_str(), &end, 10);
            if (errno == ERANGE)
                throw SyntaxError("integer literal out of range", start);
            t.int_val = v;
        }
        return t;
    }

    Token lex_name(char first, SourcePos start) {
        std::string text(1, first);
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
            text.push_back(advance());
        Token t;
        t.pos = start;
        if (text == "def") t.kind = Tok::KwDef;
        else if (text == "class") t.kind = Tok::KwClass;
        else if (text == "if") t.kind = Tok::KwIf;
        else if (text == "elif") t.kind = Tok::KwElif;
        else if (text == "else") t.kind = Tok::KwElse;
        else if (text == "while") t.kind = Tok::KwWhile;
        else if (text == "return") t.kind = Tok::KwReturn;
        else if (text == "and") t.kind = Tok::KwAnd;
        else if (text == "or") t.kind = Tok::KwOr;
        else if (text == "not") t.kind = Tok::KwNot;
        else if (text == "is") t.kind = Tok::KwIs;
        else if (text == "in") t.kind = Tok::KwIn;
        else if (text == "True") t.kind = Tok::KwTrue;
        else if (text == "False") t.kind = Tok::KwFalse;
        else if (text == "None") t.kind = Tok::KwNone;
        else {
            t.kind = Tok::Name;
            t.text = std::move(text);
        }
        return t;
    }
};

}  // namespace dyntest

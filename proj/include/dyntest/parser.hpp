#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dyntest/ast.hpp"
#include "dyntest/lexer.hpp"

namespace dyntest {

// Recursive-descent parser for `.dyn` modules. Throws SyntaxError with the
// position of the offending token; never crashes on malformed input.
class Parser {
public:
    Parser(std::string_view source, std::string module_name)
        : toks_(Lexer(source).tokenize()), module_name_(std::move(module_name)) {}

    ModuleAST parse_module() {
        ModuleAST m;
        m.name = module_name_;
        std::set<std::string> names;
        skip_newlines();
        while (!check(Tok::End)) {
            if (check(Tok::KwDef)) {
                FunctionDef fn = parse_function(/*in_class=*/false);
                if (!names.insert(fn.name).second)
                    throw SyntaxError("duplicate definition of '" + fn.name + "'", fn.pos);
                m.top_level.emplace_back(std::move(fn));
            } else if (check(Tok::KwClass)) {
                ClassDef cd = parse_class();
                if (!names.insert(cd.name).second)
                    throw SyntaxError("duplicate definition of '" + cd.name + "'", cd.pos);
                m.top_level.emplace_back(std::move(cd));
            } else {
                m.top_level.emplace_back(parse_statement(/*in_function=*/false));
            }
            skip_newlines();
        }
        return m;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::string module_name_;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool check(Tok k) const { return peek().kind == k; }
    const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool match(Tok k) {
        if (!check(k)) return false;
        advance();
        return true;
    }
    const Token& expect(Tok k, const char* what) {
        if (!check(k)) throw SyntaxError(std::string("expected ") + what, peek().pos);
        return advance();
    }
    void skip_newlines() {
        while (check(Tok::Newline)) advance();
    }

    // ---- definitions -------------------------------------------------------

    FunctionDef parse_function(bool in_class) {
        FunctionDef fn;
        fn.pos = peek().pos;
        expect(Tok::KwDef, "'def'");
        fn.name = expect(Tok::Name, "function name").text;
        expect(Tok::LParen, "'('");
        bool first = true;
        while (!check(Tok::RParen)) {
            if (!first) expect(Tok::Comma, "','");
            first = false;
            Param p;
            p.name = expect(Tok::Name, "parameter name").text;
            if (match(Tok::Colon)) p.annotation = parse_type_name();
            fn.params.push_back(std::move(p));
        }
        expect(Tok::RParen, "')'");
        if (in_class) {
            if (fn.params.empty() || fn.params.front().name != "self")
                throw SyntaxError("method '" + fn.name + "' must take 'self' first", fn.pos);
            if (fn.params.front().annotation)
                throw SyntaxError("'self' must not be annotated", fn.pos);
        } else {
            for (const auto& p : fn.params)
                if (p.name == "self")
                    throw SyntaxError("'self' outside a class", fn.pos);
        }
        if (match(Tok::Arrow)) fn.return_annotation = parse_type_name();
        fn.body = parse_block(/*in_function=*/true);
        return fn;
    }

    std::string parse_type_name() {
        if (match(Tok::KwNone)) return "None";
        return expect(Tok::Name, "type name").text;
    }

    ClassDef parse_class() {
        ClassDef cd;
        cd.pos = peek().pos;
        expect(Tok::KwClass, "'class'");
        cd.name = expect(Tok::Name, "class name").text;
        expect(Tok::LBrace, "'{'");
        skip_newlines();
        std::set<std::string> names;
        while (!check(Tok::RBrace)) {
            if (!check(Tok::KwDef))
                throw SyntaxError("only method definitions are allowed in a class body",
                                  peek().pos);
            FunctionDef m = parse_function(/*in_class=*/true);
            if (!names.insert(m.name).second)
                throw SyntaxError("duplicate method '" + m.name + "'", m.pos);
            cd.methods.push_back(std::move(m));
            skip_newlines();
        }
        expect(Tok::RBrace, "'}'");
        return cd;
    }

    std::vector<StmtPtr> parse_block(bool in_function) {
        expect(Tok::LBrace, "'{'");
        skip_newlines();
        std::vector<StmtPtr> body;
        while (!check(Tok::RBrace)) {
            if (check(Tok::End)) throw SyntaxError("unterminated block", peek().pos);
            body.push_back(parse_statement(in_function));
            skip_newlines();
        }
        expect(Tok::RBrace, "'}'");
        return body;
    }

    // ---- statements --------------------------------------------------------

    StmtPtr parse_statement(bool in_function) {
        SourcePos at = peek().pos;
        if (check(Tok::KwIf)) return parse_if(in_function);
        if (check(Tok::KwWhile)) {
            advance();
            WhileStmt ws;
            ws.cond = parse_expr();
            ws.body = parse_block(in_function);
            return make_stmt(std::move(ws), at);
        }
        if (check(Tok::KwReturn)) {
            if (!in_function) throw SyntaxError("'return' outside a function", at);
            advance();
            ReturnStmt rs;
            if (!check(Tok::Newline) && !check(Tok::RBrace) && !check(Tok::End))
                rs.value = parse_expr();
            return make_stmt(std::move(rs), at);
        }
        if (check(Tok::KwDef) || check(Tok::KwClass))
            throw SyntaxError("nested definitions are not supported", at);

        ExprPtr e = parse_expr();
        if (match(Tok::Assign)) {
            if (!std::holds_alternative<NameExpr>(e->node) &&
                !std::holds_alternative<AttrExpr>(e->node))
                throw SyntaxError("assignment target must be a name or self.attr", at);
            AssignStmt as;
            as.target = std::move(e);
            as.value = parse_expr();
            return make_stmt(std::move(as), at);
        }
        ExprStmt es;
        es.expr = std::move(e);
        return make_stmt(std::move(es), at);
    }

    StmtPtr parse_if(bool in_function) {
        SourcePos at = peek().pos;
        advance();  // if / elif
        IfStmt is;
        is.cond = parse_expr();
        is.then_body = parse_block(in_function);
        if (check(Tok::KwElif)) {
            // `elif` desugars to a nested if in the else arm
            is.else_body.push_back(parse_if(in_function));
        } else if (match(Tok::KwElse)) {
            is.else_body = parse_block(in_function);
        }
        return make_stmt(std::move(is), at);
    }

    // ---- expressions (precedence: or < and < not < cmp < add < mul < neg) --

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (check(Tok::KwOr)) {
            SourcePos at = advance().pos;
            BoolExpr be{BoolKind::Or, std::move(lhs), parse_and()};
            lhs = make_expr(std::move(be), at);
        }
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_not();
        while (check(Tok::KwAnd)) {
            SourcePos at = advance().pos;
            BoolExpr be{BoolKind::And, std::move(lhs), parse_not()};
            lhs = make_expr(std::move(be), at);
        }
        return lhs;
    }

    ExprPtr parse_not() {
        if (check(Tok::KwNot)) {
            SourcePos at = advance().pos;
            NotExpr ne{parse_not()};
            return make_expr(std::move(ne), at);
        }
        return parse_comparison();
    }

    bool at_cmp_op() const {
        switch (peek().kind) {
            case Tok::Eq:
            case Tok::Ne:
            case Tok::Lt:
            case Tok::Le:
            case Tok::Gt:
            case Tok::Ge:
            case Tok::KwIs:
            case Tok::KwIn:
                return true;
            case Tok::KwNot:
                return peek(1).kind == Tok::KwIn;
            default:
                return false;
        }
    }

    ExprPtr parse_comparison() {
        ExprPtr lhs = parse_additive();
        if (!at_cmp_op()) return lhs;
        SourcePos at = peek().pos;
        CmpOp op;
        switch (peek().kind) {
            case Tok::Eq: advance(); op = CmpOp::Eq; break;
            case Tok::Ne: advance(); op = CmpOp::Ne; break;
            case Tok::Lt: advance(); op = CmpOp::Lt; break;
            case Tok::Le: advance(); op = CmpOp::Le; break;
            case Tok::Gt: advance(); op = CmpOp::Gt; break;
            case Tok::Ge: advance(); op = CmpOp::Ge; break;
            case Tok::KwIn: advance(); op = CmpOp::In; break;
            case Tok::KwIs:
                advance();
                op = match(Tok::KwNot) ? CmpOp::IsNot : CmpOp::Is;
                break;
            default:  // not in
                advance();
                expect(Tok::KwIn, "'in' after 'not'");
                op = CmpOp::NotIn;
                break;
        }
        CompareExpr ce{op, std::move(lhs), parse_additive()};
        if (at_cmp_op())
            throw SyntaxError("chained comparisons are not supported", peek().pos);
        return make_expr(std::move(ce), at);
    }

    ExprPtr parse_additive() {
        ExprPtr lhs = parse_multiplicative();
        while (check(Tok::Plus) || check(Tok::Minus)) {
            BinOp op = check(Tok::Plus) ? BinOp::Add : BinOp::Sub;
            SourcePos at = advance().pos;
            BinaryExpr be{op, std::move(lhs), parse_multiplicative()};
            lhs = make_expr(std::move(be), at);
        }
        return lhs;
    }

    ExprPtr parse_multiplicative() {
        ExprPtr lhs = parse_unary();
        while (check(Tok::Star) || check(Tok::Slash) || check(Tok::Percent)) {
            BinOp op = check(Tok::Star)    ? BinOp::Mul
                       : check(Tok::Slash) ? BinOp::Div
                                           : BinOp::Mod;
            SourcePos at = advance().pos;
            BinaryExpr be{op, std::move(lhs), parse_unary()};
            lhs = make_expr(std::move(be), at);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (check(Tok::Minus)) {
            SourcePos at = advance().pos;
            UnaryNegExpr ue{parse_unary()};
            return make_expr(std::move(ue), at);
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (true) {
            if (check(Tok::Dot)) {
                SourcePos at = advance().pos;
                std::string name = expect(Tok::Name, "attribute or method name").text;
                if (check(Tok::LParen)) {
                    MethodCallExpr mc;
                    mc.receiver = std::move(e);
                    mc.name = std::move(name);
                    mc.args = parse_args();
                    e = make_expr(std::move(mc), at);
                } else {
                    // bare attribute reads are restricted to the receiver
                    const auto* base = std::get_if<NameExpr>(&e->node);
                    if (!base || base->name != "self")
                        throw SyntaxError("attribute access is only allowed on 'self'", at);
                    AttrExpr ae{std::move(e), std::move(name)};
                    e = make_expr(std::move(ae), at);
                }
            } else if (check(Tok::LParen)) {
                const auto* callee = std::get_if<NameExpr>(&e->node);
                if (!callee)
                    throw SyntaxError("only named functions and classes can be called",
                                      peek().pos);
                SourcePos at = e->pos;
                CallExpr ce;
                ce.callee = callee->name;
                ce.args = parse_args();
                e = make_expr(std::move(ce), at);
            } else {
                break;
            }
        }
        return e;
    }

    std::vector<ExprPtr> parse_args() {
        expect(Tok::LParen, "'('");
        std::vector<ExprPtr> args;
        bool first = true;
        while (!check(Tok::RParen)) {
            if (!first) expect(Tok::Comma, "','");
            first = false;
            args.push_back(parse_expr());
        }
        expect(Tok::RParen, "')'");
        return args;
    }

    ExprPtr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::IntLit: advance(); return make_expr(IntLit{t.int_val}, t.pos);
            case Tok::FloatLit: advance(); return make_expr(FloatLit{t.float_val}, t.pos);
            case Tok::StrLit: advance(); return make_expr(StrLit{t.text}, t.pos);
            case Tok::KwTrue: advance(); return make_expr(BoolLit{true}, t.pos);
            case Tok::KwFalse: advance(); return make_expr(BoolLit{false}, t.pos);
            case Tok::KwNone: advance(); return make_expr(NoneLit{}, t.pos);
            case Tok::Name: advance(); return make_expr(NameExpr{t.text}, t.pos);
            case Tok::LParen: {
                advance();
                ExprPtr e = parse_expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            default:
                throw SyntaxError("expected an expression", t.pos);
        }
    }

    template <typename T>
    static ExprPtr make_expr(T&& node, SourcePos at) {
        auto e = std::make_unique<Expr>();
        e->node = std::forward<T>(node);
        e->pos = at;
        return e;
    }

    template <typename T>
    static StmtPtr make_stmt(T&& node, SourcePos at) {
        auto s = std::make_unique<Stmt>();
        s->node = std::forward<T>(node);
        s->pos = at;
        return s;
    }
};

// Parse UTF-8 source text into a module AST.
inline ModuleAST parse_module(std::string_view source, std::string module_name = "<module>") {
    return Parser(source, std::move(module_name)).parse_module();
}

}  // namespace dyntest

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dyntest/diag.hpp"

namespace dyntest {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class BinOp { Add, Sub, Mul, Div, Mod };
enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge, In, NotIn, Is, IsNot };
enum class BoolKind { And, Or };

struct IntLit { std::int64_t value = 0; };
struct FloatLit { double value = 0.0; };
struct BoolLit { bool value = false; };
struct StrLit { std::string value; };
struct NoneLit {};
struct NameExpr { std::string name; };
// attribute read; the parser only admits `self` as the base
struct AttrExpr { ExprPtr base; std::string name; };
struct CallExpr { std::string callee; std::vector<ExprPtr> args; };
struct MethodCallExpr { ExprPtr receiver; std::string name; std::vector<ExprPtr> args; };
struct UnaryNegExpr { ExprPtr operand; };
struct NotExpr { ExprPtr operand; };
struct BinaryExpr { BinOp op; ExprPtr lhs; ExprPtr rhs; };
struct CompareExpr { CmpOp op; ExprPtr lhs; ExprPtr rhs; };
struct BoolExpr { BoolKind kind; ExprPtr lhs; ExprPtr rhs; };

struct Expr {
    std::variant<IntLit, FloatLit, BoolLit, StrLit, NoneLit, NameExpr, AttrExpr, CallExpr,
                 MethodCallExpr, UnaryNegExpr, NotExpr, BinaryExpr, CompareExpr, BoolExpr>
        node;
    SourcePos pos;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct ExprStmt { ExprPtr expr; };
// target is a name or `self.attr`
struct AssignStmt { ExprPtr target; ExprPtr value; };
struct ReturnStmt { ExprPtr value; /* null means `return None` */ };
struct IfStmt { ExprPtr cond; std::vector<StmtPtr> then_body; std::vector<StmtPtr> else_body; };
struct WhileStmt { ExprPtr cond; std::vector<StmtPtr> body; };

struct Stmt {
    std::variant<ExprStmt, AssignStmt, ReturnStmt, IfStmt, WhileStmt> node;
    SourcePos pos;
};

struct Param {
    std::string name;
    std::optional<std::string> annotation;  // raw type name; resolved later
};

struct FunctionDef {
    std::string name;
    std::vector<Param> params;
    std::optional<std::string> return_annotation;
    std::vector<StmtPtr> body;
    SourcePos pos;
};

struct ClassDef {
    std::string name;
    // `init` (if present) plus methods, in source order; every one declares
    // an explicit leading `self` parameter
    std::vector<FunctionDef> methods;
    SourcePos pos;

    const FunctionDef* find_init() const {
        for (const auto& m : methods)
            if (m.name == "init") return &m;
        return nullptr;
    }
};

struct ModuleAST {
    std::string name;
    using TopLevel = std::variant<FunctionDef, ClassDef, StmtPtr>;
    std::vector<TopLevel> top_level;
};

// ---- deep structural equality (source positions are ignored) --------------

bool equal(const Expr& a, const Expr& b);
bool equal(const Stmt& a, const Stmt& b);

inline bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return equal(*a, *b);
}

inline bool equal(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!equal(a[i], b[i])) return false;
    return true;
}

inline bool equal(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i] || !b[i]) return false;
        if (!equal(*a[i], *b[i])) return false;
    }
    return true;
}

inline bool equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, IntLit>) return x.value == y.value;
            else if constexpr (std::is_same_v<T, FloatLit>) return x.value == y.value;
            else if constexpr (std::is_same_v<T, BoolLit>) return x.value == y.value;
            else if constexpr (std::is_same_v<T, StrLit>) return x.value == y.value;
            else if constexpr (std::is_same_v<T, NoneLit>) return true;
            else if constexpr (std::is_same_v<T, NameExpr>) return x.name == y.name;
            else if constexpr (std::is_same_v<T, AttrExpr>)
                return x.name == y.name && equal(x.base, y.base);
            else if constexpr (std::is_same_v<T, CallExpr>)
                return x.callee == y.callee && equal(x.args, y.args);
            else if constexpr (std::is_same_v<T, MethodCallExpr>)
                return x.name == y.name && equal(x.receiver, y.receiver) && equal(x.args, y.args);
            else if constexpr (std::is_same_v<T, UnaryNegExpr>) return equal(x.operand, y.operand);
            else if constexpr (std::is_same_v<T, NotExpr>) return equal(x.operand, y.operand);
            else if constexpr (std::is_same_v<T, BinaryExpr>)
                return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
            else if constexpr (std::is_same_v<T, CompareExpr>)
                return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
            else if constexpr (std::is_same_v<T, BoolExpr>)
                return x.kind == y.kind && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        },
        a.node);
}

inline bool equal(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, ExprStmt>) return equal(x.expr, y.expr);
            else if constexpr (std::is_same_v<T, AssignStmt>)
                return equal(x.target, y.target) && equal(x.value, y.value);
            else if constexpr (std::is_same_v<T, ReturnStmt>) return equal(x.value, y.value);
            else if constexpr (std::is_same_v<T, IfStmt>)
                return equal(x.cond, y.cond) && equal(x.then_body, y.then_body) &&
                       equal(x.else_body, y.else_body);
            else if constexpr (std::is_same_v<T, WhileStmt>)
                return equal(x.cond, y.cond) && equal(x.body, y.body);
        },
        a.node);
}

inline bool equal(const FunctionDef& a, const FunctionDef& b) {
    if (a.name != b.name || a.return_annotation != b.return_annotation) return false;
    if (a.params.size() != b.params.size()) return false;
    for (std::size_t i = 0; i < a.params.size(); ++i)
        if (a.params[i].name != b.params[i].name || a.params[i].annotation != b.params[i].annotation)
            return false;
    return equal(a.body, b.body);
}

inline bool equal(const ClassDef& a, const ClassDef& b) {
    if (a.name != b.name || a.methods.size() != b.methods.size()) return false;
    for (std::size_t i = 0; i < a.methods.size(); ++i)
        if (!equal(a.methods[i], b.methods[i])) return false;
    return true;
}

inline bool equal(const ModuleAST& a, const ModuleAST& b) {
    if (a.top_level.size() != b.top_level.size()) return false;
    for (std::size_t i = 0; i < a.top_level.size(); ++i) {
        const auto& x = a.top_level[i];
        const auto& y = b.top_level[i];
        if (x.index() != y.index()) return false;
        bool ok = std::visit(
            [&](const auto& xv) -> bool {
                using T = std::decay_t<decltype(xv)>;
                const auto& yv = std::get<T>(y);
                if constexpr (std::is_same_v<T, StmtPtr>) return equal(*xv, *yv);
                else return equal(xv, yv);
            },
            x);
        if (!ok) return false;
    }
    return true;
}

}  // namespace dyntest

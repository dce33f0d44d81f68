#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "dyntest/ast.hpp"

namespace dyntest {

// Distinct int/float/string literals harvested from the module source; the
// seed pool for primitive input generation.
struct ConstantPool {
    std::set<std::int64_t> ints;
    std::set<double> floats;
    std::set<std::string> strings;

    bool operator==(const ConstantPool&) const = default;
};

namespace detail {

inline void harvest_expr(const Expr& e, ConstantPool& pool) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, IntLit>) pool.ints.insert(node.value);
            else if constexpr (std::is_same_v<T, FloatLit>) pool.floats.insert(node.value);
            else if constexpr (std::is_same_v<T, StrLit>) pool.strings.insert(node.value);
            else if constexpr (std::is_same_v<T, AttrExpr>) harvest_expr(*node.base, pool);
            else if constexpr (std::is_same_v<T, CallExpr>) {
                for (const auto& a : node.args) harvest_expr(*a, pool);
            } else if constexpr (std::is_same_v<T, MethodCallExpr>) {
                harvest_expr(*node.receiver, pool);
                for (const auto& a : node.args) harvest_expr(*a, pool);
            } else if constexpr (std::is_same_v<T, UnaryNegExpr>) {
                harvest_expr(*node.operand, pool);
            } else if constexpr (std::is_same_v<T, NotExpr>) {
                harvest_expr(*node.operand, pool);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                harvest_expr(*node.lhs, pool);
                harvest_expr(*node.rhs, pool);
            } else if constexpr (std::is_same_v<T, CompareExpr>) {
                harvest_expr(*node.lhs, pool);
                harvest_expr(*node.rhs, pool);
            } else if constexpr (std::is_same_v<T, BoolExpr>) {
                harvest_expr(*node.lhs, pool);
                harvest_expr(*node.rhs, pool);
            }
        },
        e.node);
}

inline void harvest_stmt(const Stmt& s, ConstantPool& pool);

inline void harvest_block(const std::vector<StmtPtr>& body, ConstantPool& pool) {
    for (const auto& s : body) harvest_stmt(*s, pool);
}

inline void harvest_stmt(const Stmt& s, ConstantPool& pool) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ExprStmt>) harvest_expr(*node.expr, pool);
            else if constexpr (std::is_same_v<T, AssignStmt>) {
                harvest_expr(*node.target, pool);
                harvest_expr(*node.value, pool);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                if (node.value) harvest_expr(*node.value, pool);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                harvest_expr(*node.cond, pool);
                harvest_block(node.then_body, pool);
                harvest_block(node.else_body, pool);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
                harvest_expr(*node.cond, pool);
                harvest_block(node.body, pool);
            }
        },
        s.node);
}

}  // namespace detail

inline ConstantPool collect_constants(const ModuleAST& ast) {
    ConstantPool pool;
    for (const auto& tl : ast.top_level) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, FunctionDef>) {
                    detail::harvest_block(node.body, pool);
                } else if constexpr (std::is_same_v<T, ClassDef>) {
                    for (const auto& m : node.methods) detail::harvest_block(m.body, pool);
                } else {
                    detail::harvest_stmt(*node, pool);
                }
            },
            tl);
    }
    return pool;
}

}  // namespace dyntest

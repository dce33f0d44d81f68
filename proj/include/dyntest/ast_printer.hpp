#pragma once

#include <string>

#include "dyntest/ast.hpp"
#include "dyntest/format.hpp"

namespace dyntest {

// Renders an AST back to parseable source. Fully parenthesizes nested
// expressions, so precedence never needs reconstructing; parse(render(ast))
// is structurally identical to ast.
class ASTPrinter {
public:
    std::string render(const ModuleAST& m) {
        out_.clear();
        for (const auto& tl : m.top_level) {
            std::visit(
                [&](const auto& node) {
                    using T = std::decay_t<decltype(node)>;
                    if constexpr (std::is_same_v<T, FunctionDef>) print_function(node, 0);
                    else if constexpr (std::is_same_v<T, ClassDef>) print_class(node);
                    else print_stmt(*node, 0);
                },
                tl);
        }
        return out_;
    }

    std::string render_expr(const Expr& e) {
        out_.clear();
        print_expr(e, /*parens=*/false);
        return out_;
    }

private:
    std::string out_;

    void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 4, ' '); }

    void print_class(const ClassDef& cd) {
        out_ += "class " + cd.name + " {\n";
        for (const auto& m : cd.methods) print_function(m, 1);
        out_ += "}\n";
    }

    void print_function(const FunctionDef& fn, int depth) {
        indent(depth);
        out_ += "def " + fn.name + "(";
        for (std::size_t i = 0; i < fn.params.size(); ++i) {
            if (i) out_ += ", ";
            out_ += fn.params[i].name;
            if (fn.params[i].annotation) out_ += ": " + *fn.params[i].annotation;
        }
        out_ += ")";
        if (fn.return_annotation) out_ += " -> " + *fn.return_annotation;
        out_ += " {\n";
        for (const auto& s : fn.body) print_stmt(*s, depth + 1);
        indent(depth);
        out_ += "}\n";
    }

    void print_block(const std::vector<StmtPtr>& body, int depth) {
        out_ += " {\n";
        for (const auto& s : body) print_stmt(*s, depth + 1);
        indent(depth);
        out_ += "}\n";
    }

    void print_stmt(const Stmt& s, int depth) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, ExprStmt>) {
                    indent(depth);
                    print_expr(*node.expr, false);
                    out_ += "\n";
                } else if constexpr (std::is_same_v<T, AssignStmt>) {
                    indent(depth);
                    print_expr(*node.target, false);
                    out_ += " = ";
                    print_expr(*node.value, false);
                    out_ += "\n";
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    indent(depth);
                    out_ += "return";
                    if (node.value) {
                        out_ += " ";
                        print_expr(*node.value, false);
                    }
                    out_ += "\n";
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    indent(depth);
                    out_ += "if ";
                    print_expr(*node.cond, false);
                    print_block(node.then_body, depth);
                    if (!node.else_body.empty()) {
                        indent(depth);
                        out_ += "else";
                        print_block(node.else_body, depth);
                    }
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    indent(depth);
                    out_ += "while ";
                    print_expr(*node.cond, false);
                    print_block(node.body, depth);
                }
            },
            s.node);
    }

    static const char* cmp_text(CmpOp op) {
        switch (op) {
            case CmpOp::Eq: return "==";
            case CmpOp::Ne: return "!=";
            case CmpOp::Lt: return "<";
            case CmpOp::Le: return "<=";
            case CmpOp::Gt: return ">";
            case CmpOp::Ge: return ">=";
            case CmpOp::In: return "in";
            case CmpOp::NotIn: return "not in";
            case CmpOp::Is: return "is";
            case CmpOp::IsNot: return "is not";
        }
        return "?";
    }

    static const char* bin_text(BinOp op) {
        switch (op) {
            case BinOp::Add: return "+";
            case BinOp::Sub: return "-";
            case BinOp::Mul: return "*";
            case BinOp::Div: return "/";
            case BinOp::Mod: return "%";
        }
        return "?";
    }

    void print_expr(const Expr& e, bool parens) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, IntLit>) out_ += format_int(node.value);
                else if constexpr (std::is_same_v<T, FloatLit>) out_ += format_float(node.value);
                else if constexpr (std::is_same_v<T, BoolLit>) out_ += node.value ? "True" : "False";
                else if constexpr (std::is_same_v<T, StrLit>) out_ += quote_string(node.value);
                else if constexpr (std::is_same_v<T, NoneLit>) out_ += "None";
                else if constexpr (std::is_same_v<T, NameExpr>) out_ += node.name;
                else if constexpr (std::is_same_v<T, AttrExpr>) {
                    print_expr(*node.base, false);
                    out_ += "." + node.name;
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    out_ += node.callee;
                    print_args(node.args);
                } else if constexpr (std::is_same_v<T, MethodCallExpr>) {
                    print_expr(*node.receiver, true);
                    out_ += "." + node.name;
                    print_args(node.args);
                } else if constexpr (std::is_same_v<T, UnaryNegExpr>) {
                    if (parens) out_ += "(";
                    out_ += "-";
                    print_expr(*node.operand, true);
                    if (parens) out_ += ")";
                } else if constexpr (std::is_same_v<T, NotExpr>) {
                    if (parens) out_ += "(";
                    out_ += "not ";
                    print_expr(*node.operand, true);
                    if (parens) out_ += ")";
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    if (parens) out_ += "(";
                    print_expr(*node.lhs, true);
                    out_ += std::string(" ") + bin_text(node.op) + " ";
                    print_expr(*node.rhs, true);
                    if (parens) out_ += ")";
                } else if constexpr (std::is_same_v<T, CompareExpr>) {
                    if (parens) out_ += "(";
                    print_expr(*node.lhs, true);
                    out_ += std::string(" ") + cmp_text(node.op) + " ";
                    print_expr(*node.rhs, true);
                    if (parens) out_ += ")";
                } else if constexpr (std::is_same_v<T, BoolExpr>) {
                    if (parens) out_ += "(";
                    print_expr(*node.lhs, true);
                    out_ += node.kind == BoolKind::And ? " and " : " or ";
                    print_expr(*node.rhs, true);
                    if (parens) out_ += ")";
                }
            },
            e.node);
    }

    void print_args(const std::vector<ExprPtr>& args) {
        out_ += "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out_ += ", ";
            print_expr(*args[i], false);
        }
        out_ += ")";
    }
};

inline std::string render_module(const ModuleAST& m) { return ASTPrinter().render(m); }

}  // namespace dyntest

#pragma once

#include <map>
#include <string>
#include <vector>

#include "dyntest/ast.hpp"
#include "dyntest/bytecode.hpp"
#include "dyntest/format.hpp"

namespace dyntest {

// Lowers a module AST to stack-machine code objects. Every atomic condition
// in control flow becomes one conditional jump with its own PredicateSite;
// compound booleans nest, so a condition with n atomic comparisons yields n
// sites. Compilation is deterministic: identical ASTs produce identical
// instruction streams and goal ids.
class Compiler {
public:
    CompiledModule compile(const ModuleAST& ast) {
        cm_ = CompiledModule{};
        cm_.name = ast.name;

        // pass 1: register globals so bodies can reference later definitions
        for (const auto& tl : ast.top_level) {
            if (const auto* fn = std::get_if<FunctionDef>(&tl)) {
                add_global(GlobalEntry::Kind::Function, fn->name, 0);
            } else if (const auto* cd = std::get_if<ClassDef>(&tl)) {
                const auto class_idx = static_cast<std::uint32_t>(cm_.classes.size());
                cm_.classes.push_back(ClassLayout{cd->name, std::nullopt, {}});
                add_global(GlobalEntry::Kind::Class, cd->name, class_idx);
            }
        }

        // module body is code object 0
        cm_.code_objects.emplace_back();
        cm_.code_objects[0].id = 0;
        cm_.code_objects[0].kind = CodeKind::Module;
        cm_.code_objects[0].name = "<module>";

        // pass 2: compile definitions in source order
        std::size_t class_cursor = 0;
        for (const auto& tl : ast.top_level) {
            if (const auto* fn = std::get_if<FunctionDef>(&tl)) {
                std::uint32_t id = compile_function(*fn, CodeKind::Function, fn->name, false);
                for (auto& g : cm_.globals)
                    if (g.kind == GlobalEntry::Kind::Function && g.name == fn->name) g.index = id;
            } else if (const auto* cd = std::get_if<ClassDef>(&tl)) {
                ClassLayout& layout = cm_.classes[class_cursor++];
                for (const auto& m : cd->methods) {
                    bool is_init = m.name == "init";
                    std::uint32_t id =
                        compile_function(m, is_init ? CodeKind::Constructor : CodeKind::Method,
                                         cd->name + "." + m.name, true);
                    if (is_init)
                        layout.init_code = id;
                    else
                        layout.methods.emplace_back(m.name, id);
                }
            }
        }

        // pass 3: module body (top-level statements)
        compile_module_body(ast);
        return std::move(cm_);
    }

private:
    CompiledModule cm_;
    CodeObject* co_ = nullptr;
    std::map<std::string, std::uint32_t> locals_;
    std::map<std::string, std::uint32_t> const_cache_;
    std::map<std::string, std::int32_t> name_cache_;
    std::vector<std::int32_t> label_target_;
    // fixups: (instruction index, label) patched into operand `a`
    std::vector<std::pair<std::size_t, std::int32_t>> fixups_;

    void add_global(GlobalEntry::Kind kind, const std::string& name, std::uint32_t index) {
        cm_.global_index[name] = static_cast<std::uint32_t>(cm_.globals.size());
        cm_.globals.push_back({kind, name, index});
    }

    // ---- per-code-object state ---------------------------------------------

    void begin_code(CodeObject* co) {
        co_ = co;
        locals_.clear();
        const_cache_.clear();
        name_cache_.clear();
        label_target_.clear();
        fixups_.clear();
    }

    void finish_code() {
        emit(Op::PushNone);
        emit(Op::Return);
        for (const auto& [idx, label] : fixups_) {
            if (label_target_[static_cast<std::size_t>(label)] < 0)
                throw EngineError("unplaced label");
            co_->instructions[idx].a = label_target_[static_cast<std::size_t>(label)];
        }
        co_->local_count = static_cast<std::uint32_t>(locals_.size());
    }

    std::size_t emit(Op op, std::int32_t a = 0, std::int32_t b = 0, std::int32_t c = 0) {
        co_->instructions.push_back({op, a, b, c});
        return co_->instructions.size() - 1;
    }

    std::int32_t new_label() {
        label_target_.push_back(-1);
        return static_cast<std::int32_t>(label_target_.size() - 1);
    }

    void place(std::int32_t label) {
        label_target_[static_cast<std::size_t>(label)] =
            static_cast<std::int32_t>(co_->instructions.size());
    }

    void emit_jump(Op op, std::int32_t label, std::int32_t b = 0, std::int32_t c = 0) {
        fixups_.emplace_back(emit(op, -1, b, c), label);
    }

    std::int32_t intern_const(Constant c) {
        // cache key mixes the alternative tag so 1 and 1.0 and true stay distinct
        std::string key = std::to_string(c.index()) + "|";
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::monostate>) key += "none";
                else if constexpr (std::is_same_v<T, std::string>) key += v;
                else if constexpr (std::is_same_v<T, double>) key += format_float(v);
                else key += std::to_string(v);
            },
            c);
        auto it = const_cache_.find(key);
        if (it != const_cache_.end()) return static_cast<std::int32_t>(it->second);
        co_->consts.push_back(std::move(c));
        auto idx = static_cast<std::uint32_t>(co_->consts.size() - 1);
        const_cache_[key] = idx;
        return static_cast<std::int32_t>(idx);
    }

    std::int32_t intern_name(const std::string& n) {
        auto it = name_cache_.find(n);
        if (it != name_cache_.end()) return it->second;
        co_->names.push_back(n);
        auto idx = static_cast<std::int32_t>(co_->names.size() - 1);
        name_cache_[n] = idx;
        return idx;
    }

    std::uint32_t new_predicate(bool binary, CmpOp op, SourcePos pos) {
        PredicateSite p;
        p.id = static_cast<std::uint32_t>(cm_.predicates.size());
        p.binary = binary;
        p.op = op;
        p.pos = pos;
        p.code_object = co_->id;
        cm_.predicates.push_back(p);
        return p.id;
    }

    // ---- scope handling ----------------------------------------------------

    void collect_assigned(const std::vector<StmtPtr>& body) {
        for (const auto& s : body) {
            std::visit(
                [&](const auto& node) {
                    using T = std::decay_t<decltype(node)>;
                    if constexpr (std::is_same_v<T, AssignStmt>) {
                        if (const auto* n = std::get_if<NameExpr>(&node.target->node))
                            if (!locals_.count(n->name))
                                locals_[n->name] = static_cast<std::uint32_t>(locals_.size());
                    } else if constexpr (std::is_same_v<T, IfStmt>) {
                        collect_assigned(node.then_body);
                        collect_assigned(node.else_body);
                    } else if constexpr (std::is_same_v<T, WhileStmt>) {
                        collect_assigned(node.body);
                    }
                },
                s->node);
        }
    }

    // ---- code objects ------------------------------------------------------

    std::uint32_t compile_function(const FunctionDef& fn, CodeKind kind, std::string qual_name,
                                   bool /*in_class*/) {
        cm_.code_objects.emplace_back();
        CodeObject& co = cm_.code_objects.back();
        co.id = static_cast<std::uint32_t>(cm_.code_objects.size() - 1);
        co.kind = kind;
        co.name = std::move(qual_name);
        co.param_count = static_cast<std::uint32_t>(fn.params.size());

        begin_code(&co);
        for (const auto& p : fn.params)
            locals_[p.name] = static_cast<std::uint32_t>(locals_.size());
        collect_assigned(fn.body);
        compile_block(fn.body);
        finish_code();
        return co.id;
    }

    void compile_module_body(const ModuleAST& ast) {
        begin_code(&cm_.code_objects[0]);
        std::vector<const Stmt*> stmts;
        for (const auto& tl : ast.top_level)
            if (const auto* sp = std::get_if<StmtPtr>(&tl)) stmts.push_back(sp->get());
        for (const Stmt* s : stmts) {
            std::visit(
                [&](const auto& node) {
                    using T = std::decay_t<decltype(node)>;
                    if constexpr (std::is_same_v<T, AssignStmt>) {
                        if (const auto* n = std::get_if<NameExpr>(&node.target->node))
                            if (!locals_.count(n->name))
                                locals_[n->name] = static_cast<std::uint32_t>(locals_.size());
                    } else if constexpr (std::is_same_v<T, IfStmt>) {
                        collect_assigned(node.then_body);
                        collect_assigned(node.else_body);
                    } else if constexpr (std::is_same_v<T, WhileStmt>) {
                        collect_assigned(node.body);
                    }
                },
                s->node);
        }
        for (const Stmt* s : stmts) compile_stmt(*s);
        finish_code();
    }

    void compile_block(const std::vector<StmtPtr>& body) {
        for (const auto& s : body) compile_stmt(*s);
    }

    // ---- statements --------------------------------------------------------

    void compile_stmt(const Stmt& s) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, ExprStmt>) {
                    compile_expr(*node.expr);
                    emit(Op::Pop);
                } else if constexpr (std::is_same_v<T, AssignStmt>) {
                    compile_assign(node);
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    if (node.value)
                        compile_expr(*node.value);
                    else
                        emit(Op::PushNone);
                    emit(Op::Return);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    std::int32_t l_then = new_label();
                    std::int32_t l_else = new_label();
                    std::int32_t l_end = new_label();
                    compile_cond(*node.cond, l_then, l_else);
                    place(l_then);
                    compile_block(node.then_body);
                    emit_jump(Op::Jump, l_end);
                    place(l_else);
                    compile_block(node.else_body);
                    place(l_end);
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                    std::int32_t l_cond = new_label();
                    std::int32_t l_body = new_label();
                    std::int32_t l_end = new_label();
                    place(l_cond);
                    compile_cond(*node.cond, l_body, l_end);
                    place(l_body);
                    compile_block(node.body);
                    emit_jump(Op::Jump, l_cond);
                    place(l_end);
                }
            },
            s.node);
    }

    void compile_assign(const AssignStmt& as) {
        if (const auto* n = std::get_if<NameExpr>(&as.target->node)) {
            compile_expr(*as.value);
            emit(Op::StoreLocal, static_cast<std::int32_t>(locals_.at(n->name)));
        } else {
            const auto& attr = std::get<AttrExpr>(as.target->node);
            compile_expr(*as.value);
            compile_expr(*attr.base);
            emit(Op::SetAttr, intern_name(attr.name));
        }
    }

    // ---- conditions: one conditional jump per atomic condition -------------

    void compile_cond(const Expr& e, std::int32_t l_true, std::int32_t l_false) {
        if (const auto* be = std::get_if<BoolExpr>(&e.node)) {
            std::int32_t l_mid = new_label();
            if (be->kind == BoolKind::And) {
                compile_cond(*be->lhs, l_mid, l_false);
                place(l_mid);
                compile_cond(*be->rhs, l_true, l_false);
            } else {
                compile_cond(*be->lhs, l_true, l_mid);
                place(l_mid);
                compile_cond(*be->rhs, l_true, l_false);
            }
            return;
        }
        if (const auto* ne = std::get_if<NotExpr>(&e.node)) {
            compile_cond(*ne->operand, l_false, l_true);
            return;
        }
        if (const auto* ce = std::get_if<CompareExpr>(&e.node)) {
            compile_expr(*ce->lhs);
            compile_expr(*ce->rhs);
            std::uint32_t pred = new_predicate(true, ce->op, e.pos);
            emit_jump(Op::JumpIfFalseCmp, l_false, static_cast<std::int32_t>(pred),
                      static_cast<std::int32_t>(ce->op));
            emit_jump(Op::Jump, l_true);
            return;
        }
        compile_expr(e);
        std::uint32_t pred = new_predicate(false, CmpOp::Eq, e.pos);
        emit_jump(Op::JumpIfFalseTruthy, l_false, static_cast<std::int32_t>(pred));
        emit_jump(Op::Jump, l_true);
    }

    // ---- expressions -------------------------------------------------------

    void compile_expr(const Expr& e) {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, IntLit>) {
                    emit(Op::PushConst, intern_const(node.value));
                } else if constexpr (std::is_same_v<T, FloatLit>) {
                    emit(Op::PushConst, intern_const(node.value));
                } else if constexpr (std::is_same_v<T, BoolLit>) {
                    emit(Op::PushConst, intern_const(node.value));
                } else if constexpr (std::is_same_v<T, StrLit>) {
                    emit(Op::PushConst, intern_const(node.value));
                } else if constexpr (std::is_same_v<T, NoneLit>) {
                    emit(Op::PushNone);
                } else if constexpr (std::is_same_v<T, NameExpr>) {
                    compile_name(node.name, e.pos);
                } else if constexpr (std::is_same_v<T, AttrExpr>) {
                    compile_expr(*node.base);
                    emit(Op::GetAttr, intern_name(node.name));
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    compile_name(node.callee, e.pos);
                    for (const auto& a : node.args) compile_expr(*a);
                    emit(Op::Call, static_cast<std::int32_t>(node.args.size()));
                } else if constexpr (std::is_same_v<T, MethodCallExpr>) {
                    compile_expr(*node.receiver);
                    for (const auto& a : node.args) compile_expr(*a);
                    emit(Op::CallMethod, intern_name(node.name),
                         static_cast<std::int32_t>(node.args.size()));
                } else if constexpr (std::is_same_v<T, UnaryNegExpr>) {
                    compile_expr(*node.operand);
                    emit(Op::UnaryNeg);
                } else if constexpr (std::is_same_v<T, NotExpr>) {
                    compile_expr(*node.operand);
                    emit(Op::UnaryNot);
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    compile_expr(*node.lhs);
                    compile_expr(*node.rhs);
                    emit(Op::BinaryOp, static_cast<std::int32_t>(node.op));
                } else if constexpr (std::is_same_v<T, CompareExpr>) {
                    compile_expr(*node.lhs);
                    compile_expr(*node.rhs);
                    emit(Op::Compare, static_cast<std::int32_t>(node.op));
                } else if constexpr (std::is_same_v<T, BoolExpr>) {
                    // value position keeps short-circuit semantics; the jump is
                    // a truthiness predicate on the left operand
                    std::int32_t l_end = new_label();
                    compile_expr(*node.lhs);
                    std::uint32_t pred = new_predicate(false, CmpOp::Eq, e.pos);
                    emit_jump(node.kind == BoolKind::And ? Op::JumpIfFalseOrPop
                                                         : Op::JumpIfTrueOrPop,
                              l_end, static_cast<std::int32_t>(pred));
                    compile_expr(*node.rhs);
                    place(l_end);
                }
            },
            e.node);
    }

    void compile_name(const std::string& name, SourcePos pos) {
        auto it = locals_.find(name);
        if (it != locals_.end()) {
            emit(Op::LoadLocal, static_cast<std::int32_t>(it->second));
            return;
        }
        auto git = cm_.global_index.find(name);
        if (git == cm_.global_index.end())
            throw CompileError("undefined name '" + name + "'", pos);
        emit(Op::LoadGlobal, static_cast<std::int32_t>(git->second));
    }
};

inline CompiledModule compile_module(const ModuleAST& ast) { return Compiler().compile(ast); }

// ---- disassembly (golden-test surface) -------------------------------------

inline const char* opcode_name(Op op) {
    switch (op) {
        case Op::PushConst: return "PUSH_CONST";
        case Op::PushNone: return "PUSH_NONE";
        case Op::LoadLocal: return "LOAD_LOCAL";
        case Op::StoreLocal: return "STORE_LOCAL";
        case Op::LoadGlobal: return "LOAD_GLOBAL";
        case Op::GetAttr: return "GET_ATTR";
        case Op::SetAttr: return "SET_ATTR";
        case Op::Call: return "CALL";
        case Op::CallMethod: return "CALL_METHOD";
        case Op::BinaryOp: return "BINARY_OP";
        case Op::UnaryNeg: return "UNARY_NEG";
        case Op::UnaryNot: return "UNARY_NOT";
        case Op::Compare: return "COMPARE";
        case Op::Jump: return "JUMP";
        case Op::JumpIfFalseCmp: return "JUMP_IF_FALSE_CMP";
        case Op::JumpIfFalseTruthy: return "JUMP_IF_FALSE_TRUTHY";
        case Op::JumpIfFalseOrPop: return "JUMP_IF_FALSE_OR_POP";
        case Op::JumpIfTrueOrPop: return "JUMP_IF_TRUE_OR_POP";
        case Op::Return: return "RETURN";
        case Op::Pop: return "POP";
    }
    return "?";
}

inline const char* cmp_name(CmpOp op) {
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

inline const char* code_kind_name(CodeKind k) {
    switch (k) {
        case CodeKind::Module: return "module";
        case CodeKind::Function: return "function";
        case CodeKind::Constructor: return "constructor";
        case CodeKind::Method: return "method";
    }
    return "?";
}

inline std::string constant_repr(const Constant& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "None";
            else if constexpr (std::is_same_v<T, bool>) return v ? "True" : "False";
            else if constexpr (std::is_same_v<T, std::int64_t>) return format_int(v);
            else if constexpr (std::is_same_v<T, double>) return format_float(v);
            else return quote_string(v);
        },
        c);
}

inline std::string disassemble(const CompiledModule& cm) {
    std::string out;
    out += "module " + cm.name + ": code_objects=" + std::to_string(cm.code_objects.size()) +
           " predicates=" + std::to_string(cm.predicates.size()) +
           " branches=" + std::to_string(cm.branch_count()) + "\n";
    for (const auto& co : cm.code_objects) {
        out += "code " + std::to_string(co.id) + ": kind=" + code_kind_name(co.kind) +
               " name=" + co.name + " params=" + std::to_string(co.param_count) +
               " locals=" + std::to_string(co.local_count) + "\n";
        for (std::size_t i = 0; i < co.instructions.size(); ++i) {
            const auto& ins = co.instructions[i];
            out += "  " + std::to_string(i) + ": " + opcode_name(ins.op);
            switch (ins.op) {
                case Op::PushConst:
                    out += " " + std::to_string(ins.a) + "  ; " +
                           constant_repr(co.consts[static_cast<std::size_t>(ins.a)]);
                    break;
                case Op::LoadLocal:
                case Op::StoreLocal:
                case Op::Call:
                    out += " " + std::to_string(ins.a);
                    break;
                case Op::LoadGlobal:
                    out += " " + std::to_string(ins.a) + "  ; " +
                           cm.globals[static_cast<std::size_t>(ins.a)].name;
                    break;
                case Op::GetAttr:
                case Op::SetAttr:
                    out += " " + std::to_string(ins.a) + "  ; " +
                           co.names[static_cast<std::size_t>(ins.a)];
                    break;
                case Op::CallMethod:
                    out += " " + std::to_string(ins.a) + " argc=" + std::to_string(ins.b) +
                           "  ; " + co.names[static_cast<std::size_t>(ins.a)];
                    break;
                case Op::BinaryOp: {
                    const char* names[] = {"+", "-", "*", "/", "%"};
                    out += std::string(" ") + names[ins.a];
                    break;
                }
                case Op::Compare:
                    out += std::string(" ") + cmp_name(static_cast<CmpOp>(ins.a));
                    break;
                case Op::Jump:
                    out += " -> " + std::to_string(ins.a);
                    break;
                case Op::JumpIfFalseCmp:
                    out += std::string(" ") + cmp_name(static_cast<CmpOp>(ins.c)) + " -> " +
                           std::to_string(ins.a) + " pred=" + std::to_string(ins.b);
                    break;
                case Op::JumpIfFalseTruthy:
                case Op::JumpIfFalseOrPop:
                case Op::JumpIfTrueOrPop:
                    out += " -> " + std::to_string(ins.a) + " pred=" + std::to_string(ins.b);
                    break;
                default:
                    break;
            }
            out += "\n";
        }
    }
    out += "predicates:\n";
    for (const auto& p : cm.predicates) {
        out += "  p" + std::to_string(p.id) + ": ";
        out += p.binary ? (std::string("binary '") + cmp_name(p.op) + "'") : "unary truthy";
        out += " at " + std::to_string(p.pos.line) + ":" + std::to_string(p.pos.col) +
               " code=" + std::to_string(p.code_object) + "\n";
    }
    return out;
}

}  // namespace dyntest

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dyntest/ast.hpp"
#include "dyntest/constants.hpp"
#include "dyntest/signatures.hpp"

namespace dyntest {

// Minimal stack machine. Conditional jumps are the only instructions that
// carry predicate ids; each one references exactly one PredicateSite.
enum class Op : std::uint8_t {
    PushConst,          // a: const index
    PushNone,
    LoadLocal,          // a: slot
    StoreLocal,         // a: slot
    LoadGlobal,         // a: global index
    GetAttr,            // a: name index; pops object
    SetAttr,            // a: name index; pops object, then value
    Call,               // a: argc; stack: callee, arg0..argN-1
    CallMethod,         // a: name index, b: argc; stack: receiver, arg0..argN-1
    BinaryOp,           // a: BinOp
    UnaryNeg,
    UnaryNot,
    Compare,            // a: CmpOp (value position; no predicate)
    Jump,               // a: target
    JumpIfFalseCmp,     // a: target, b: predicate id, c: CmpOp
    JumpIfFalseTruthy,  // a: target, b: predicate id
    JumpIfFalseOrPop,   // a: target, b: predicate id; keeps TOS when jumping
    JumpIfTrueOrPop,    // a: target, b: predicate id; keeps TOS when jumping
    Return,
    Pop,
};

struct Instruction {
    Op op;
    std::int32_t a = 0;
    std::int32_t b = 0;
    std::int32_t c = 0;
};

// Compile-time constant; None is monostate.
using Constant = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

enum class CodeKind { Module, Function, Constructor, Method };

struct PredicateSite {
    std::uint32_t id = 0;
    bool binary = false;
    CmpOp op = CmpOp::Eq;  // meaningful iff binary; unary sites test truthiness
    SourcePos pos;
    std::uint32_t code_object = 0;
};

struct Branch {
    std::uint32_t predicate = 0;
    bool polarity = true;  // true-branch or false-branch

    bool operator==(const Branch&) const = default;
    bool operator<(const Branch& o) const {
        if (predicate != o.predicate) return predicate < o.predicate;
        return polarity > o.polarity;  // true-branch sorts first
    }
    std::uint32_t flat_index() const { return predicate * 2 + (polarity ? 0 : 1); }
};

struct CodeObject {
    std::uint32_t id = 0;
    CodeKind kind = CodeKind::Function;
    std::string name;  // "<module>", "f", "Foo.init", "Foo.do_foo"
    std::uint32_t param_count = 0;  // includes the receiver slot for methods
    std::uint32_t local_count = 0;
    std::vector<Instruction> instructions;
    std::vector<Constant> consts;
    std::vector<std::string> names;  // attribute / method name table
};

struct ClassLayout {
    std::string name;
    std::optional<std::uint32_t> init_code;
    std::vector<std::pair<std::string, std::uint32_t>> methods;  // excludes init

    const std::uint32_t* find_method(const std::string& n) const {
        for (const auto& [name, code] : methods)
            if (name == n) return &code;
        return nullptr;
    }
};

struct GlobalEntry {
    enum class Kind { Function, Class };
    Kind kind;
    std::string name;
    std::uint32_t index;  // code object id or class index
};

struct CompiledModule {
    std::string name;
    std::vector<CodeObject> code_objects;
    std::vector<PredicateSite> predicates;
    std::vector<ClassLayout> classes;
    std::vector<GlobalEntry> globals;
    std::map<std::string, std::uint32_t> global_index;
    CallablePool pool;
    ConstantPool constants;

    std::size_t branch_count() const { return predicates.size() * 2; }

    std::vector<Branch> branches() const {
        std::vector<Branch> out;
        out.reserve(branch_count());
        for (const auto& p : predicates) {
            out.push_back({p.id, true});
            out.push_back({p.id, false});
        }
        return out;
    }

    const ClassLayout* find_class(const std::string& n) const {
        for (const auto& c : classes)
            if (c.name == n) return &c;
        return nullptr;
    }

    // identity token used to reject cross-module result aggregation
    std::string goal_space_key() const {
        return name + "/" + std::to_string(code_objects.size()) + "/" +
               std::to_string(predicates.size());
    }
};

// Stable goal orderings used by fitness and reporting.
struct GoalIndex {
    std::vector<std::uint32_t> code_object_ids;
    std::vector<Branch> branch_goals;
};

inline GoalIndex enumerate_goals(const CompiledModule& cm) {
    GoalIndex g;
    g.code_object_ids.reserve(cm.code_objects.size());
    for (const auto& co : cm.code_objects) g.code_object_ids.push_back(co.id);
    g.branch_goals = cm.branches();
    return g;
}

}  // namespace dyntest

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dyntest/ast.hpp"
#include "dyntest/types.hpp"

namespace dyntest {

enum class CallableKind { Constructor, Method, Function };

struct ParamSig {
    std::string name;
    TypeRef declared;
};

struct CallableSig {
    CallableKind kind = CallableKind::Function;
    std::optional<std::string> owner;  // class name for constructors and methods
    std::string name;                  // class name for constructors
    std::vector<ParamSig> params;      // never includes the implicit receiver
    TypeRef returns;

    std::string qualified_name() const {
        if (kind == CallableKind::Method) return *owner + "." + name;
        return name;
    }
};

// The public callables of a module under test, with whatever declared-type
// information the chosen mode admits.
struct CallablePool {
    std::vector<CallableSig> entries;
    std::vector<std::string> warnings;

    const CallableSig* find_constructor(const std::string& class_name) const {
        for (const auto& e : entries)
            if (e.kind == CallableKind::Constructor && e.name == class_name) return &e;
        return nullptr;
    }

    const CallableSig* find(CallableKind kind, const std::optional<std::string>& owner,
                            const std::string& name) const {
        for (const auto& e : entries)
            if (e.kind == kind && e.owner == owner && e.name == name) return &e;
        return nullptr;
    }

    // All concrete types mentioned anywhere in the entries; the draw pool for
    // Any-typed parameters.
    std::set<TypeRef> concrete_types() const {
        std::set<TypeRef> out;
        for (const auto& e : entries) {
            if (e.returns.is_concrete()) out.insert(e.returns);
            for (const auto& p : e.params)
                if (p.declared.is_concrete()) out.insert(p.declared);
        }
        return out;
    }
};

namespace detail {

inline bool is_private(const std::string& name) { return !name.empty() && name[0] == '_'; }

inline TypeRef resolve_annotation(const std::string& ann, const std::set<std::string>& classes,
                                  std::vector<std::string>& warnings) {
    if (ann == "int") return TypeRef::ints();
    if (ann == "float") return TypeRef::floats();
    if (ann == "bool") return TypeRef::bools();
    if (ann == "str") return TypeRef::strs();
    if (ann == "None") return TypeRef::none();
    if (ann == "Any") return TypeRef::any();
    if (classes.count(ann)) return TypeRef::cls(ann);
    warnings.push_back("unresolved type annotation '" + ann + "'");
    return TypeRef::unknown();
}

inline std::vector<ParamSig> map_params(const std::vector<Param>& params, bool skip_self,
                                        bool use_annotations,
                                        const std::set<std::string>& classes,
                                        std::vector<std::string>& warnings) {
    std::vector<ParamSig> out;
    for (std::size_t i = skip_self ? 1 : 0; i < params.size(); ++i) {
        const auto& p = params[i];
        TypeRef t = TypeRef::unknown();
        if (use_annotations && p.annotation)
            t = resolve_annotation(*p.annotation, classes, warnings);
        out.push_back({p.name, t});
    }
    return out;
}

}  // namespace detail

// One entry per public function, class constructor, and method. With
// use_annotations off every declared type is Unknown.
inline CallablePool collect_signatures(const ModuleAST& ast, bool use_annotations) {
    CallablePool pool;
    std::set<std::string> classes;
    for (const auto& tl : ast.top_level)
        if (const auto* cd = std::get_if<ClassDef>(&tl)) classes.insert(cd->name);

    auto resolve_return = [&](const std::optional<std::string>& ann) {
        if (!use_annotations || !ann) return TypeRef::unknown();
        return detail::resolve_annotation(*ann, classes, pool.warnings);
    };

    for (const auto& tl : ast.top_level) {
        if (const auto* fn = std::get_if<FunctionDef>(&tl)) {
            if (detail::is_private(fn->name)) continue;
            CallableSig sig;
            sig.kind = CallableKind::Function;
            sig.name = fn->name;
            sig.params = detail::map_params(fn->params, false, use_annotations, classes,
                                            pool.warnings);
            sig.returns = resolve_return(fn->return_annotation);
            pool.entries.push_back(std::move(sig));
        } else if (const auto* cd = std::get_if<ClassDef>(&tl)) {
            if (detail::is_private(cd->name)) continue;
            CallableSig ctor;
            ctor.kind = CallableKind::Constructor;
            ctor.owner = cd->name;
            ctor.name = cd->name;
            if (const FunctionDef* init = cd->find_init())
                ctor.params = detail::map_params(init->params, true, use_annotations, classes,
                                                 pool.warnings);
            // a constructor yields an instance of its class by construction
            ctor.returns = use_annotations ? TypeRef::cls(cd->name) : TypeRef::unknown();
            pool.entries.push_back(std::move(ctor));

            for (const auto& m : cd->methods) {
                if (m.name == "init" || detail::is_private(m.name)) continue;
                CallableSig sig;
                sig.kind = CallableKind::Method;
                sig.owner = cd->name;
                sig.name = m.name;
                sig.params =
                    detail::map_params(m.params, true, use_annotations, classes, pool.warnings);
                sig.returns = resolve_return(m.return_annotation);
                pool.entries.push_back(std::move(sig));
            }
        }
    }
    return pool;
}

}  // namespace dyntest

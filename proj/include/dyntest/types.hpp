#pragma once

#include <string>

namespace dyntest {

// Declared type of a parameter or return value. Unknown stands for an absent
// (or ignored) annotation; Any is the explicitly written wildcard.
struct TypeRef {
    enum class Kind { Int, Float, Bool, Str, NoneType, Class, Any, Unknown };

    Kind kind = Kind::Unknown;
    std::string class_name;  // set iff kind == Class

    static TypeRef ints() { return {Kind::Int, {}}; }
    static TypeRef floats() { return {Kind::Float, {}}; }
    static TypeRef bools() { return {Kind::Bool, {}}; }
    static TypeRef strs() { return {Kind::Str, {}}; }
    static TypeRef none() { return {Kind::NoneType, {}}; }
    static TypeRef cls(std::string name) { return {Kind::Class, std::move(name)}; }
    static TypeRef any() { return {Kind::Any, {}}; }
    static TypeRef unknown() { return {Kind::Unknown, {}}; }

    bool is_primitive() const {
        return kind == Kind::Int || kind == Kind::Float || kind == Kind::Bool ||
               kind == Kind::Str;
    }
    bool is_concrete() const { return kind != Kind::Any && kind != Kind::Unknown; }

    bool operator==(const TypeRef&) const = default;
    bool operator<(const TypeRef& o) const {
        if (kind != o.kind) return kind < o.kind;
        return class_name < o.class_name;
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::Int: return "int";
            case Kind::Float: return "float";
            case Kind::Bool: return "bool";
            case Kind::Str: return "str";
            case Kind::NoneType: return "None";
            case Kind::Class: return class_name;
            case Kind::Any: return "Any";
            case Kind::Unknown: return "?";
        }
        return "?";
    }
};

}  // namespace dyntest

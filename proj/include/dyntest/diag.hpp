#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dyntest {

struct SourcePos {
    int line = 0;  // 1-based
    int col = 0;   // 1-based

    bool operator==(const SourcePos&) const = default;
};

// Malformed subject-language source. Carries the position of the offending token.
struct SyntaxError : std::runtime_error {
    SourcePos pos;
    SyntaxError(std::string msg, SourcePos p)
        : std::runtime_error(std::move(msg) + " at " + std::to_string(p.line) + ":" +
                             std::to_string(p.col)),
          pos(p) {}
};

// Reference to an undefined name (and friends) found while lowering to bytecode.
struct CompileError : std::runtime_error {
    SourcePos pos;
    CompileError(std::string msg, SourcePos p)
        : std::runtime_error(std::move(msg) + " at " + std::to_string(p.line) + ":" +
                             std::to_string(p.col)),
          pos(p) {}
};

// Internal fault of the engine itself. Seeing one of these is a bug.
struct EngineError : std::logic_error {
    using std::logic_error::logic_error;
};

// Aggregation over results from different compiled modules.
struct MixedModuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptySample : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dyntest

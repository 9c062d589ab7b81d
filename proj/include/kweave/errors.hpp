#pragma once
// Error hierarchy shared across the library.

#include <stdexcept>
#include <string>
#include <vector>

namespace kweave {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DuplicateUID : Error {
    std::string uid;
    explicit DuplicateUID(const std::string& u) : Error("duplicate UID: " + u), uid(u) {}
};

struct UnknownUID : Error {
    std::string uid;
    explicit UnknownUID(const std::string& u) : Error("unknown UID: " + u), uid(u) {}
};

struct UnboundVariable : Error {
    std::string uid;
    explicit UnboundVariable(const std::string& u) : Error("unbound variable: " + u), uid(u) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error("domain error: " + msg) {}
};

struct NoCaseMatched : Error {
    NoCaseMatched() : Error("no case condition matched") {}
};

struct TypeError : Error {
    explicit TypeError(const std::string& msg) : Error("type error: " + msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("dimension mismatch: " + msg) {}
};

struct AmbiguousDefinition : Error {
    std::string uid;
    explicit AmbiguousDefinition(const std::string& quantity)
        : Error("quantity defined by more than one chunk: " + quantity), uid(quantity) {}
};

struct UnreachableOutput : Error {
    std::string uid;
    explicit UnreachableOutput(const std::string& u) : Error("output not derivable: " + u), uid(u) {}
};

struct UnderdeterminedQuantity : Error {
    std::string uid;
    explicit UnderdeterminedQuantity(const std::string& u)
        : Error("quantity neither an input nor defined by any DD/IM: " + u), uid(u) {}
};

struct IntegrityError : Error {
    explicit IntegrityError(const std::string& msg) : Error("integrity: " + msg) {}
};

struct DuplicateTarget : Error {
    std::string name;
    explicit DuplicateTarget(const std::string& n) : Error("renderer already registered: " + n), name(n) {}
};

struct UnsupportedConstruct : Error {
    explicit UnsupportedConstruct(const std::string& msg) : Error("unsupported construct: " + msg) {}
};

struct IOFailure : Error {
    std::string path;
    explicit IOFailure(const std::string& p) : Error("I/O failure: " + p), path(p) {}
};

struct ValidationFailed : Error {
    std::vector<std::string> findings;
    explicit ValidationFailed(std::vector<std::string> fs)
        : Error("validation failed (" + std::to_string(fs.size()) + " findings)"), findings(std::move(fs)) {}
};

} // namespace kweave

#ifndef ORBITPOW_ERRORS_HPP
#define ORBITPOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orbitpow {

// Bad user-supplied values (CLI maps these to exit code 2).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroInput : InvalidInput {
    ZeroInput() : InvalidInput("operation undefined for zero input") {}
    explicit ZeroInput(const std::string& what) : InvalidInput(what) {}
};

struct ZeroAlpha : InvalidInput {
    ZeroAlpha() : InvalidInput("alpha must be nonzero (ratio f^n(alpha)/alpha undefined at 0)") {}
};

struct DegreeTooSmall : InvalidInput {
    explicit DegreeTooSmall(const std::string& what) : InvalidInput(what) {}
};

struct InvalidParameters : InvalidInput {
    explicit InvalidParameters(const std::string& what) : InvalidInput(what) {}
};

struct InvalidTriple : InvalidInput {
    explicit InvalidTriple(const std::string& what) : InvalidInput(what) {}
};

struct WrongHitKind : InvalidInput {
    explicit WrongHitKind(const std::string& what) : InvalidInput(what) {}
};

struct ParseError : InvalidInput {
    explicit ParseError(const std::string& what) : InvalidInput(what) {}
};

// Orbit values grew past the configured bit budget (CLI exit code 3).
struct BitsizeExceeded : std::runtime_error {
    explicit BitsizeExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orbitpow

#endif

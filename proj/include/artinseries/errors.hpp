/// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace artin {

struct AmbientMismatch : std::invalid_argument {
    explicit AmbientMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct ContextMismatch : std::invalid_argument {
    explicit ContextMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct FamilyMismatch : std::invalid_argument {
    explicit FamilyMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NotArtinian : std::domain_error {
    explicit NotArtinian(const std::string& what) : std::domain_error(what) {}
};

struct NotAField : std::domain_error {
    explicit NotAField(const std::string& what) : std::domain_error(what) {}
};

struct UnsupportedPresentation : std::domain_error {
    explicit UnsupportedPresentation(const std::string& what) : std::domain_error(what) {}
};

struct IncompatibleIdeal : std::invalid_argument {
    explicit IncompatibleIdeal(const std::string& what) : std::invalid_argument(what) {}
};

struct NotMonomial : std::invalid_argument {
    explicit NotMonomial(const std::string& what) : std::invalid_argument(what) {}
};

struct UnitGenerator : std::invalid_argument {
    explicit UnitGenerator(const std::string& what) : std::invalid_argument(what) {}
};

struct NotHeightGenerated : std::domain_error {
    explicit NotHeightGenerated(const std::string& what) : std::domain_error(what) {}
};

struct NotSupportedSlice : std::domain_error {
    explicit NotSupportedSlice(const std::string& what) : std::domain_error(what) {}
};

struct SearchExhausted : std::runtime_error {
    explicit SearchExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct StreamFinite : std::out_of_range {
    explicit StreamFinite(const std::string& what) : std::out_of_range(what) {}
};

struct NotProper : std::invalid_argument {
    explicit NotProper(const std::string& what) : std::invalid_argument(what) {}
};

struct ConstraintViolated : std::invalid_argument {
    explicit ConstraintViolated(const std::string& what) : std::invalid_argument(what) {}
};

struct SamplingExhausted : std::runtime_error {
    explicit SamplingExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a computation the theory guarantees to succeed does not.
/// Callers treat this as a fatal self-check failure, never as a soft error.
struct InternalSelfCheck : std::logic_error {
    explicit InternalSelfCheck(const std::string& what) : std::logic_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace artin

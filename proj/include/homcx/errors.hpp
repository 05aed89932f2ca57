#pragma once

#include <stdexcept>
#include <string>

namespace homcx {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& w) : Error("ShapeMismatch", w) {}
};
struct FieldMismatch : Error {
    explicit FieldMismatch(const std::string& w) : Error("FieldMismatch", w) {}
};
struct AlgebraMismatch : Error {
    explicit AlgebraMismatch(const std::string& w) : Error("AlgebraMismatch", w) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error("ValidationError", w) {}
};
struct NotAMorphism : Error {
    explicit NotAMorphism(const std::string& w) : Error("NotAMorphism", w) {}
};
struct WindowTooSmall : Error {
    explicit WindowTooSmall(const std::string& w) : Error("WindowTooSmall", w) {}
};
struct UnboundedInput : Error {
    explicit UnboundedInput(const std::string& w) : Error("UnboundedInput", w) {}
};
struct InputNotExact : Error {
    explicit InputNotExact(const std::string& w) : Error("InputNotExact", w) {}
};
struct SplittingInvalid : Error {
    explicit SplittingInvalid(const std::string& w) : Error("SplittingInvalid", w) {}
};
struct SystemInfeasible : Error {
    explicit SystemInfeasible(const std::string& w) : Error("SystemInfeasible", w) {}
};
struct BidualityNotIso : Error {
    explicit BidualityNotIso(const std::string& w) : Error("BidualityNotIso", w) {}
};
struct CertificateViolated : Error {
    explicit CertificateViolated(const std::string& w) : Error("CertificateViolated", w) {}
};
struct NotProper : Error {
    explicit NotProper(const std::string& w) : Error("NotProper", w) {}
};
struct IdentificationFailed : Error {
    explicit IdentificationFailed(const std::string& w) : Error("IdentificationFailed", w) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error("ParseError", w) {}
};

/// Internal consistency failure: a verified postcondition did not hold.
struct InternalCheckFailed : Error {
    explicit InternalCheckFailed(const std::string& w) : Error("InternalCheckFailed", w) {}
};

inline void check(bool ok, const std::string& what) {
    if (!ok) throw InternalCheckFailed(what);
}

} // namespace homcx

#pragma once

#include <stdexcept>
#include <string>

namespace skw {

// Error categories drive the CLI exit codes: validation -> 2, precision -> 3,
// falsification -> 4. A "falsification" is a runtime refutation of a law the
// library asserts to hold (these are hard failures and are always serialized).
enum class ErrorKind {
    // validation
    NotPrime,
    EvenPrime,
    ReduciblePoly,
    NoEmbedding,
    RingMismatch,
    NotInvertible,
    IndexOutOfRange,
    MalformedDescriptor,
    NoValidPairs,
    BadSupport,
    NotPrincipalUnit,
    SupportTooNegative,
    MalformedInput,
    BadArgument,
    // precision
    PrecisionLoss,
    PrecisionTooLow,
    // falsification
    NonUniqueMaxProfile,
    SingularGram,
    NoVerdict,
    NoConvergence,
    InvariantViolated,
    DependentFamily,
    CardinalityMismatch,
};

enum class ErrorClass { Validation, Precision, Falsification };

constexpr ErrorClass classify(ErrorKind k)
{
    switch (k) {
    case ErrorKind::PrecisionLoss:
    case ErrorKind::PrecisionTooLow:
        return ErrorClass::Precision;
    case ErrorKind::NonUniqueMaxProfile:
    case ErrorKind::SingularGram:
    case ErrorKind::NoVerdict:
    case ErrorKind::NoConvergence:
    case ErrorKind::InvariantViolated:
    case ErrorKind::DependentFamily:
    case ErrorKind::CardinalityMismatch:
        return ErrorClass::Falsification;
    default:
        return ErrorClass::Validation;
    }
}

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const { return kind_; }
    ErrorClass error_class() const { return classify(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

} // namespace skw

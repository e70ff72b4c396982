#pragma once

#include <stdexcept>
#include <string>

namespace robbalab {

// Malformed input: bad JSON, wrong field types, unknown fields. CLI exit 1.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// A stated precondition does not hold at this truncation (order undecidable,
// inadmissible norm parameters, non-unit leading coefficient, ...). CLI exit 2.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// An internal certified invariant failed to verify. Always a bug. CLI exit 3.
struct CertificateViolation : std::logic_error {
    explicit CertificateViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace robbalab

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace morikit {

// Every error carries a stable machine-readable code; the CLI surfaces it
// verbatim in the error object. Codes are snake_case and never renamed.
class mk_error : public std::runtime_error {
public:
    mk_error(std::string code, const std::string& message,
             std::vector<std::string> fields = {})
        : std::runtime_error(message), code_(std::move(code)),
          fields_(std::move(fields)) {}

    const std::string& code() const { return code_; }
    const std::vector<std::string>& fields() const { return fields_; }

private:
    std::string code_;
    std::vector<std::string> fields_;
};

// Malformed input: bad dimensions, unparsable numbers, unknown names.
class input_error : public mk_error {
public:
    using mk_error::mk_error;
};

// Structurally valid input that violates a model invariant
// (non-primitive v, wrong signature, degenerate polarization, ...).
class validation_error : public mk_error {
public:
    using mk_error::mk_error;
};

// Request outside the supported computational envelope.
class unsupported_error : public mk_error {
public:
    using mk_error::mk_error;
};

} // namespace morikit

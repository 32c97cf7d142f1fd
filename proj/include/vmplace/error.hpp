#pragma once

#include <stdexcept>
#include <string>

namespace vmp {

enum class ErrorCode {
    invalid_argument,
    parse,
    unknown_algorithm,
    generator_infeasible,
    instance_too_large,
    io,
};

// All library failures are reported as vmp::Error; the C API maps the code
// onto its status enum.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace vmp

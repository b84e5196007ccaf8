#pragma once

#include <stdexcept>
#include <string>

namespace hyperhodge {

// Exit codes used by the command-line tool.
enum class ExitCode : int {
    ok = 0,
    validation = 1,
    admissibility = 2,
    inconclusive = 3,
    shape = 4,
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual ExitCode code() const { return ExitCode::validation; }
};

struct ValidationError : Error {
    using Error::Error;
};

struct SignatureError : ValidationError {
    using ValidationError::ValidationError;
};

struct AdmissibilityError : Error {
    using Error::Error;
    ExitCode code() const override { return ExitCode::admissibility; }
};

struct InconclusiveError : Error {
    using Error::Error;
    ExitCode code() const override { return ExitCode::inconclusive; }
};

struct ShapeError : Error {
    using Error::Error;
    ExitCode code() const override { return ExitCode::shape; }
};

} // namespace hyperhodge

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aggbench {

enum class ErrorCode {
    FileNotFound,
    ParseError,
    EmptyDataset,
    EmptyColumn,
    LengthMismatch,
    NonFiniteInput,
    MissingResponse,
    ArityMismatch,
    InvalidModel,
    InvalidConfig,
    NoUsableDatasets,
    EmptyReport,
    InsufficientData,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// benchmark and the CLI can report it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message)
        , code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace aggbench

#include "aggbench/log.hpp"
#include "aggbench/error.hpp"

#include <iostream>

namespace aggbench {

namespace {
thread_local WarningCapture* active_capture = nullptr;
}

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::EmptyColumn: return "EmptyColumn";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::MissingResponse: return "MissingResponse";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NoUsableDatasets: return "NoUsableDatasets";
    case ErrorCode::EmptyReport: return "EmptyReport";
    case ErrorCode::InsufficientData: return "InsufficientData";
    }
    return "Unknown";
}

WarningCapture::WarningCapture()
    : previous_(active_capture)
{
    active_capture = this;
}

WarningCapture::~WarningCapture() { active_capture = previous_; }

void warn(const std::string& message)
{
    if (active_capture != nullptr) {
        active_capture->messages_.push_back(message);
        return;
    }
    std::cerr << "warning: " << message << '\n';
}

} // namespace aggbench

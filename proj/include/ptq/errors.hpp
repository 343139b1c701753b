#pragma once

#include <stdexcept>
#include <string>

namespace ptq {

enum class ErrorCode {
    InvalidParams,
    NonPtParameters,
    DegenerateXi,
    GammaExceedsEpsilon,
    NoSteadyState,
    InvalidBeta,
    ZeroAmplitude,
    DefectiveMatrix,
    NonPhysicalCovariance,
    EmptyWindow,
    ExceptionalPointParams,
    StepFailure,
    ConfigError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Integration gave up; reached_time is the last time the solution was valid.
class StepFailure : public Error {
public:
    StepFailure(double reached_time, const std::string& what)
        : Error(ErrorCode::StepFailure, what), reached_time_(reached_time) {}

    double reached_time() const noexcept { return reached_time_; }

private:
    double reached_time_;
};

inline const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::NonPtParameters: return "NonPtParameters";
        case ErrorCode::DegenerateXi: return "DegenerateXi";
        case ErrorCode::GammaExceedsEpsilon: return "GammaExceedsEpsilon";
        case ErrorCode::NoSteadyState: return "NoSteadyState";
        case ErrorCode::InvalidBeta: return "InvalidBeta";
        case ErrorCode::ZeroAmplitude: return "ZeroAmplitude";
        case ErrorCode::DefectiveMatrix: return "DefectiveMatrix";
        case ErrorCode::NonPhysicalCovariance: return "NonPhysicalCovariance";
        case ErrorCode::EmptyWindow: return "EmptyWindow";
        case ErrorCode::ExceptionalPointParams: return "ExceptionalPointParams";
        case ErrorCode::StepFailure: return "StepFailure";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace ptq

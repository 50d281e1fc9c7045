#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eph {

enum class ErrorCode {
    ZeroDivisor,
    PointAtInfinity,
    NotInUpperHalfPlane,
    ImaginaryLength,
    InsufficientSamples,
    PoleOnSegment,
    DegenerateCycle,
    NoRealSolution,
    DomainExceeded,
    OutsideDisk,
    NonMonotoneSamples,
    VerticalPair,
    StepTooLarge,
    DegenerateFit,
    PointsNotOnCycle,
    UnsupportedGeometry,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// Recoverable domain failure. Contract violations (e.g. mixing number
// kinds) are reported with std::logic_error instead.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace eph

#include "eph/error.hpp"

namespace eph {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ZeroDivisor: return "ZeroDivisor";
        case ErrorCode::PointAtInfinity: return "PointAtInfinity";
        case ErrorCode::NotInUpperHalfPlane: return "NotInUpperHalfPlane";
        case ErrorCode::ImaginaryLength: return "ImaginaryLength";
        case ErrorCode::InsufficientSamples: return "InsufficientSamples";
        case ErrorCode::PoleOnSegment: return "PoleOnSegment";
        case ErrorCode::DegenerateCycle: return "DegenerateCycle";
        case ErrorCode::NoRealSolution: return "NoRealSolution";
        case ErrorCode::DomainExceeded: return "DomainExceeded";
        case ErrorCode::OutsideDisk: return "OutsideDisk";
        case ErrorCode::NonMonotoneSamples: return "NonMonotoneSamples";
        case ErrorCode::VerticalPair: return "VerticalPair";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::DegenerateFit: return "DegenerateFit";
        case ErrorCode::PointsNotOnCycle: return "PointsNotOnCycle";
        case ErrorCode::UnsupportedGeometry: return "UnsupportedGeometry";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace eph

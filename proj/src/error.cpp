#include "wavekit/error.hpp"

namespace wavekit {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::UnsupportedWavelet: return "UnsupportedWavelet";
    case ErrorCode::NotOrthogonalFamily: return "NotOrthogonalFamily";
    case ErrorCode::SignalTooShort: return "SignalTooShort";
    case ErrorCode::OddLengthPeriodic: return "OddLengthPeriodic";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooManyLevels: return "TooManyLevels";
    case ErrorCode::MalformedDecomposition: return "MalformedDecomposition";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ZeroReference: return "ZeroReference";
    case ErrorCode::EmptyData: return "EmptyData";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedWav: return "MalformedWav";
    case ErrorCode::UnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorCode::MalformedPgm: return "MalformedPgm";
    case ErrorCode::UnsupportedMaxval: return "UnsupportedMaxval";
    case ErrorCode::MalformedCsv: return "MalformedCsv";
    case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

} // namespace wavekit

#include "insider/error.hpp"

namespace insider {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositive: return "NonPositive";
        case ErrorCode::NegativeRate: return "NegativeRate";
        case ErrorCode::NotFinite: return "NotFinite";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::IndexOverflow: return "IndexOverflow";
        case ErrorCode::BadSampleCount: return "BadSampleCount";
        case ErrorCode::UnknownTrader: return "UnknownTrader";
        case ErrorCode::DegenerateEstimate: return "DegenerateEstimate";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
    }
    return "Unknown";
}

}  // namespace insider

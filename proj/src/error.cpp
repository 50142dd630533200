#include "kurasync/error.hpp"

namespace kurasync {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::GraphDisconnected: return "GraphDisconnected";
    case ErrorKind::ClusterNotConnected: return "ClusterNotConnected";
    case ErrorKind::QuotientDisconnected: return "QuotientDisconnected";
    case ErrorKind::ImageOverlap: return "ImageOverlap";
    case ErrorKind::ReconstructionFailure: return "ReconstructionFailure";
    case ErrorKind::ZeroInterFrequencyGap: return "ZeroInterFrequencyGap";
    case ErrorKind::IntraFrequencyMismatch: return "IntraFrequencyMismatch";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::NoFeasibleEpsilon: return "NoFeasibleEpsilon";
    case ErrorKind::FrequencyDominanceViolated: return "FrequencyDominanceViolated";
    case ErrorKind::ConstantSignal: return "ConstantSignal";
    case ErrorKind::NonPhysiologicalState: return "NonPhysiologicalState";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DisconnectedResult: return "DisconnectedResult";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace kurasync

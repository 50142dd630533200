#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kurasync {

enum class ErrorKind {
  InvalidInput,
  GraphDisconnected,
  ClusterNotConnected,
  QuotientDisconnected,
  ImageOverlap,
  ReconstructionFailure,
  ZeroInterFrequencyGap,
  IntraFrequencyMismatch,
  StepTooLarge,
  AssumptionViolated,
  NoFeasibleEpsilon,
  FrequencyDominanceViolated,
  ConstantSignal,
  NonPhysiologicalState,
  EmptyInput,
  DisconnectedResult,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace kurasync

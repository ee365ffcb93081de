#pragma once

#include <stdexcept>
#include <string>

namespace specpert {

enum class Err {
  NoConvergence,
  ShellDegenerate,
  NoSolution,
  InconsistentVolume,
  BasisMismatch,
  CutoffTooSmall,
  DimensionMismatch,
  TooLarge,
  NearSingularA,
  WindingMismatch,
  CompanionFailure,
  EmptyEnsemble,
  BinDegenerate,
  BinMismatch,
  MetadataMismatch,
  BadConfig,
  IoError,
};

/// Single exception type for all domain errors; tests match on code().
class SimError : public std::runtime_error {
 public:
  SimError(Err code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

}  // namespace specpert

#pragma once

#include <stdexcept>
#include <string>

namespace hypstrip {

enum class Errc {
  InvalidArgument,
  NotHyperbolic,
  NotHyperparallel,
  NotPerpendicular,
  NonPositiveWidth,
  NonPositiveLength,
  BoundaryNotHyperbolic,
  NotDiscrete,
  UnknownGenerator,
  UnsupportedTopology,
  BasepointInWall,
  TangentWall,
  StripNotEmbedded,
  NonConvergedWalls,
  TopologyMismatch,
  EmptyClassSet,
  ConfigError,
  IoError,
};

const char* errc_name(Errc code) noexcept;

// All library failures are reported with this exception; the code is stable
// and is what the C API hands back to callers.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hypstrip

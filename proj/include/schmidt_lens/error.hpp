#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schmidt_lens {

enum class ErrorKind {
  NotSquare,
  NotHermitian,
  NonFinite,
  DimensionMismatch,
  InvalidDimension,
  InvalidRank,
  ParamOutOfRange,
  NotPSD,
  NotTracePreserving,
  NotNormalized,
  NonSquareChannel,
  NotBipartite,
  UnknownFamily,
  NoSignChange,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace schmidt_lens

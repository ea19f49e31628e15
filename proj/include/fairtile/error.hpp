#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fairtile/geometry.hpp"

namespace fairtile {

enum class ErrorKind {
  InvalidParameter,
  DenominatorVanished,
  IndexOutOfRange,
  DegeneratePolygon,
  DegeneratePair,
  NoUnequalHeights,
  ExhaustedRetries,
  BoundaryMismatch,
  DegenerateTriangle,
  SingularDenominator,
  NonConvexOutput,
  NoConvergence,
  SingularJacobian,
  EdgeOutOfRange,
  OutOfBasin,
  ParseError,
  IoError,
};

std::string_view kind_name(ErrorKind kind);

// All library failures surface as this type; kind() is the sentinel name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<TileId> tile = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<TileId>& tile() const noexcept { return tile_; }

 private:
  ErrorKind kind_;
  std::optional<TileId> tile_;
};

}  // namespace fairtile

// Copyright 2026 The thinspec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef THINSPEC_ERROR_HPP
#define THINSPEC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace thinspec
{

enum class ErrorCode
{
  InvalidArgument,
  InvalidLayer,
  OffsetTooDeep,
  InversionFailed,
  DomainError,
  NoRootInBracket,
  SolveSingular,
  MeshFailure,
  LayerUnderResolved,
  ConvergenceFailure,
  NearDegenerate,
  MissingLayer,
  NoRootFound,
  FactorizationFailure,
  InsufficientData,
  BelowLambda0,
  ConfigError,
  IoError
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// command line front end can map it onto an exit status.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidLayer: return "InvalidLayer";
    case ErrorCode::OffsetTooDeep: return "OffsetTooDeep";
    case ErrorCode::InversionFailed: return "InversionFailed";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoRootInBracket: return "NoRootInBracket";
    case ErrorCode::SolveSingular: return "SolveSingular";
    case ErrorCode::MeshFailure: return "MeshFailure";
    case ErrorCode::LayerUnderResolved: return "LayerUnderResolved";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NearDegenerate: return "NearDegenerate";
    case ErrorCode::MissingLayer: return "MissingLayer";
    case ErrorCode::NoRootFound: return "NoRootFound";
    case ErrorCode::FactorizationFailure: return "FactorizationFailure";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::BelowLambda0: return "BelowLambda0";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

} // namespace thinspec

#endif // THINSPEC_ERROR_HPP

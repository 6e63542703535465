#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tropex {

// Numeric values are the CLI exit codes.
enum class ErrorCode : int {
  Syntax = 2,
  DuplicateExponentConflict = 3,
  NegativeExponent = 4,
  NotPositiveReal = 5,
  RankDeficient = 6,
  Unbounded = 7,
  NotPointed = 8,
  DimTooLarge = 9,
  PointOutsidePolytope = 10,
  UnsupportedDimension = 11,
  InvalidConfiguration = 12,
  NotAFan = 13,
  InvalidSubdivision = 14,
  IncompatibleOnSharedFace = 15,
  NotTransverse = 16,
  NotConvexLift = 17,
  NotUnimodular = 18,
  MissingLatticePoint = 19,
  NotAStratum = 20,
  BadDelta = 21,
  EmptyRegion = 22,
  NotTwoDimensional = 23,
  InvalidPolytope = 24,
  NotBasic = 25,
  DimensionMismatch = 26,
  InvalidArgument = 27,
  Usage = 64,
};

inline std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::DuplicateExponentConflict: return "DuplicateExponentConflict";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::NotPositiveReal: return "NotPositiveReal";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::DimTooLarge: return "DimTooLarge";
    case ErrorCode::PointOutsidePolytope: return "PointOutsidePolytope";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::NotAFan: return "NotAFan";
    case ErrorCode::InvalidSubdivision: return "InvalidSubdivision";
    case ErrorCode::IncompatibleOnSharedFace: return "IncompatibleOnSharedFace";
    case ErrorCode::NotTransverse: return "NotTransverse";
    case ErrorCode::NotConvexLift: return "NotConvexLift";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::MissingLatticePoint: return "MissingLatticePoint";
    case ErrorCode::NotAStratum: return "NotAStratum";
    case ErrorCode::BadDelta: return "BadDelta";
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::NotTwoDimensional: return "NotTwoDimensional";
    case ErrorCode::InvalidPolytope: return "InvalidPolytope";
    case ErrorCode::NotBasic: return "NotBasic";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Usage: return "UsageError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace tropex

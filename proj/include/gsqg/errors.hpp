#pragma once

#include <stdexcept>
#include <string>

namespace gsqg {

// Failure categories surfaced by the library. Each maps to a documented
// precondition or runtime guard of one of the operators.
enum class Errc {
  NonZeroMean,
  NotDivergenceFree,
  OverlappingSupports,
  NonDyadic,
  PointInsideSupport,
  NoContraction,
  IterLimit,
  BlowupSuspected,
  ConsistencyLost,
  InconsistentPair,
  DegenerateDirection,
  ParseError,
  ValidationError,
  IoError,
  BadMagic,
  BadLength,
  InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace gsqg

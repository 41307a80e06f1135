#pragma once

#include <stdexcept>
#include <string>

namespace hsk {

enum class Errc {
  ZeroVector,
  NegativeEntry,
  NotUnit,
  DimensionMismatch,
  DimensionTooSmall,
  InvalidOrder,
  InvalidArgument,
  TruncationExceeded,
  InvalidParams,
  GridTooCoarse,
  OutOfDomain,
  QuadratureFailure,
  MatrixTooLarge,
  EmptyClass,
  ClassTooSmall,
  ClassSmallerThanK,
  ParseError,
  NegativeValueForCountData,
  TooFewWalkers,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) raise(code, msg);
}

}  // namespace hsk

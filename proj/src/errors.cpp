#include "hsk/errors.hpp"

namespace hsk {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::NotUnit: return "NotUnit";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::InvalidOrder: return "InvalidOrder";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::TruncationExceeded: return "TruncationExceeded";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::MatrixTooLarge: return "MatrixTooLarge";
    case Errc::EmptyClass: return "EmptyClass";
    case Errc::ClassTooSmall: return "ClassTooSmall";
    case Errc::ClassSmallerThanK: return "ClassSmallerThanK";
    case Errc::ParseError: return "ParseError";
    case Errc::NegativeValueForCountData: return "NegativeValueForCountData";
    case Errc::TooFewWalkers: return "TooFewWalkers";
  }
  return "UnknownError";
}

}  // namespace hsk

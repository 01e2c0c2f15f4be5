#include "gsqg/errors.hpp"

namespace gsqg {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonZeroMean: return "NonZeroMean";
    case Errc::NotDivergenceFree: return "NotDivergenceFree";
    case Errc::OverlappingSupports: return "OverlappingSupports";
    case Errc::NonDyadic: return "NonDyadic";
    case Errc::PointInsideSupport: return "PointInsideSupport";
    case Errc::NoContraction: return "NoContraction";
    case Errc::IterLimit: return "IterLimit";
    case Errc::BlowupSuspected: return "BlowupSuspected";
    case Errc::ConsistencyLost: return "ConsistencyLost";
    case Errc::InconsistentPair: return "InconsistentPair";
    case Errc::DegenerateDirection: return "DegenerateDirection";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::IoError: return "IoError";
    case Errc::BadMagic: return "BadMagic";
    case Errc::BadLength: return "BadLength";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace gsqg

#include "geolab/error.hpp"

namespace geolab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArguments: return "invalid-arguments";
    case ErrorCode::kAttemptsExhausted: return "attempts-exhausted";
    case ErrorCode::kCountOverflow: return "count-overflow";
    case ErrorCode::kPathsNotDisjoint: return "paths-not-disjoint";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kSchema: return "schema";
  }
  return "unknown";
}

}  // namespace geolab

#include "rotgraph/errors.hpp"

namespace rotgraph {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Input: return "input";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Malformed: return "malformed";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Inapplicable: return "inapplicable";
    case ErrorCode::NonGeneric: return "non_generic";
    case ErrorCode::Resolution: return "resolution";
    case ErrorCode::Divergence: return "divergence";
    case ErrorCode::Internal: return "internal";
  }
  return "internal";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Input:
    case ErrorCode::Domain:
    case ErrorCode::Malformed: return 2;
    case ErrorCode::Unsupported:
    case ErrorCode::Inapplicable: return 3;
    case ErrorCode::NonGeneric:
    case ErrorCode::Resolution: return 4;
    case ErrorCode::Divergence: return 5;
    case ErrorCode::Internal: return 1;
  }
  return 1;
}

}  // namespace rotgraph

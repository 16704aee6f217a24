#include "finkquad/error.hpp"

namespace finkquad {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::Parse: return "PARSE";
    case Errc::NodeRange: return "NODE_RANGE";
    case Errc::OrderExceeded: return "ORDER_EXCEEDED";
    case Errc::Domain: return "DOMAIN";
    case Errc::Unrepresentable: return "UNREPRESENTABLE";
    case Errc::MaxDepth: return "MAX_DEPTH";
    case Errc::Degenerate: return "DEGENERATE";
    case Errc::InconsistentStats: return "INCONSISTENT_STATS";
    case Errc::HypothesisUnmet: return "HYPOTHESIS_UNMET";
  }
  return "UNKNOWN";
}

}  // namespace finkquad

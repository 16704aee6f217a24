#pragma once

#include <stdexcept>
#include <string>

namespace finkquad {

// Failure categories surfaced across the library. CLI maps Parse/BadConfig to
// exit code 2, everything else reported per command.
enum class Errc {
  Parse,            // malformed textual input (rational, poly, fn spec, config)
  NodeRange,        // node x outside the admissible interval for the rule
  OrderExceeded,    // derivative order above the function's max_order
  Domain,           // evaluation outside the function's domain (pole, bad arg)
  Unrepresentable,  // reflected function has no catalog representation
  MaxDepth,         // adaptive subdivision hit the depth cap without converging
  Degenerate,       // not enough usable data (e.g. all-zero errors in a fit)
  InconsistentStats,// supplied bounds violate m <= M or a negative norm
  HypothesisUnmet,  // bound prerequisites not satisfied by the function
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace finkquad

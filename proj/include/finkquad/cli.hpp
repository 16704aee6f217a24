#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "finkquad/bounds.hpp"

namespace finkquad {
namespace cli {

// Parsed command line. Commands: verify, quad, bounds, audit, kernels.
// Rationals accept "num", "num/den", or decimal literals (converted to the
// exact binary value). p and q accept "inf".
struct RunConfig {
  std::string command;
  std::string fn_spec;   // empty means not provided
  std::string seq_spec;  // empty means the power sequence centered at the node
  int n = 1;
  Rational a{0};
  Rational b{1};
  std::optional<Rational> x;
  std::optional<NodePreset> node;
  RuleVariant variant = RuleVariant::G;
  KernelVariant kernel = KernelVariant::Canonical;
  double p = std::numeric_limits<double>::infinity();
  std::optional<double> q;  // defaults to the conjugate exponent of p
  std::vector<long> panels;
  double tol = oracle::kDefaultTol;
  std::string out_path;  // empty means stdout
};

// argv order (no reversal). Throws Error(Errc::Parse) on unknown flags or
// malformed values.
RunConfig parse_args(const std::vector<std::string>& args);

// Explicit --x wins over --node. Throws Error(Errc::Parse) when required and
// neither is present.
std::optional<Rational> resolved_node(const RunConfig& cfg, bool required);

// Each command writes one report (JSON, or CSV for `kernels`) to `os` and
// returns the process exit code: 0 passed, 1 a residual or ASSERT bound
// failed, 2 unusable configuration. Reports are byte-deterministic: fixed
// field order, floats at 17 significant digits, exact values as "num/den".
int cmd_verify(const RunConfig& cfg, std::ostream& os);
int cmd_quad(const RunConfig& cfg, std::ostream& os);
int cmd_bounds(const RunConfig& cfg, std::ostream& os);
int cmd_audit(const RunConfig& cfg, std::ostream& os);
int cmd_kernels(const RunConfig& cfg, std::ostream& os);

// Dispatches on cfg.command.
int run(const RunConfig& cfg, std::ostream& os);

// Full process entry: parse, dispatch to --out or stdout, map configuration
// errors to exit code 2.
int main_entry(int argc, char** argv);

}  // namespace cli
}  // namespace finkquad

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "isurf/rng.hpp"

namespace isurf {

struct CommandRequest {
  std::string command;       // construct, lift, decompose, normalize, classify-map,
                             // dual-conic, topview, envelope, verify, render-svg, selftest
  std::string input = "-";   // path, "-" for stdin, or inline JSON text
  std::string output_path;   // empty or "-": stdout
  std::string svg_path;      // SVG sink for render-svg
  bool float_mode = false;
  double tol = 1e-9;
  std::uint64_t seed = kDefaultSeed;
  std::string selftest_scale = "smoke";  // smoke | full
};

// Executes the request and writes the JSON report to output_path or `out`.
// Returns the process exit code: 0 ok, 1 domain error, 2 parse error.
// Identical request bytes produce identical report bytes.
int run_command(const CommandRequest& req, std::istream& in, std::ostream& out,
                std::ostream& err);

}  // namespace isurf

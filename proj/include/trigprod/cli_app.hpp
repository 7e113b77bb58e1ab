// CLI front end, callable in-process so tests can drive it directly.
// stdout carries the payload, stderr the diagnostics.
//
// Exit codes (stable contract):
//   0  success (including verify verdicts pass and finding)
//   1  verify verdict fail
//   2  invalid arguments / grid / request
//   3  pole-guard rejection
//   4  tolerance or range cap exceeded
//   5  insufficient samples
//   64 internal error
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trigprod {

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace trigprod

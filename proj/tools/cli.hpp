#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecarm {
namespace cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,            // success / verdict true / probable prime
  kFalse = 1,         // verdict false / composite witness
  kUsage = 2,         // bad arguments or malformed input
  kInapplicable = 3,  // no applicable curve
  kInconclusive = 4,  // factorization budget exhausted
  kEmpty = 5,         // clean run, nothing emitted
};

/// Runs the command line given argv-style arguments (without the program
/// name). Reports go to `out`, usage errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace cli
}  // namespace ecarm

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ubsea/partition.hpp"

namespace ubsea::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInputFormat = 3,
  kDegenerate = 4,
};

/// Runs `ubsea <subcommand> ...`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One label token per line (blank lines and '#' lines skipped), exactly two
/// distinct tokens. Tokens "0"/"1" keep their value; any other alphabet maps
/// the first-seen token to 1.
Partition read_label_file(const std::string& path);

}  // namespace ubsea::cli

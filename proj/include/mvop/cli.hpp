#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mvop::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidParameters = 1,
    kSingularAlternant = 2,
    kSchemaMismatch = 3,
    kThresholdsNotMet = 4,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mvop::cli

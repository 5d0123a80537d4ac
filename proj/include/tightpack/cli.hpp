#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tightpack {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;   // not uniform / not certified
inline constexpr int kExitInvalid = 2;  // bad flags, unreadable or malformed input, refused work

/// Environment variable that supplies the default --seed.
inline constexpr const char* kSeedEnvVar = "TIGHTPACK_SEED";

/// Runs one command. `args` excludes the program name, e.g.
/// {"gen", "--n", "8", "--p", "1"}. Artifacts go to the paths given by
/// --out / --report; "-" or an absent --report means `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tightpack

#pragma once

#include <cstdint>
#include <string>

// Runs the full reproduction suite (the deliverable's acceptance checks,
// sections 1-8) and prints a (claim, expected, computed, status) table plus a
// manifest line. Returns kExitOk when every row passes, kExitVerifyFail
// otherwise.
int run_reproduce(std::uint64_t seed, int n_max, int threads, const std::string& command);

#pragma once

#include <iosfwd>

#include "nlse/config.hpp"

namespace nlse {

// Executes the configured workflow, writing artifacts under cfg.out_dir.
// Returns the process exit code: 0 ok, 1 config error, 2 numerical failure,
// 3 unexpected blow-up.
int run(const RunConfig& cfg, std::ostream& log);

// Parallelism cap: NLSE_FORGE_THREADS, else hardware concurrency.
int thread_cap();

}  // namespace nlse

#pragma once

namespace fraclattice {

// Entry point behind the fraclattice binary. Exit codes: 0 success,
// 1 verification failure, 2 usage error, 3 runtime/sampler error.
int run_cli(int argc, char** argv);

}  // namespace fraclattice

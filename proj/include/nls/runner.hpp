#pragma once

#include <string>
#include <vector>

namespace nls {

inline constexpr const char* kToolVersion = "0.1.0";

/// CLI entry point: argv names one subcommand of {eig, sweep-d, sweep-sigma,
/// poincare, certify, mp-check, oracle-compare} plus --config <path>.
/// Returns 0 on success, 2 on validation errors, 3 on solver errors.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace nls

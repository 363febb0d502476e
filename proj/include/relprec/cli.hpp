#pragma once

namespace relprec {

/// Command-line entry point (verify-model, verify-innerprod, analyze,
/// demo-innerprod, counterexamples). Exit codes: 0 success, 1 usage or input
/// error, 2 certified violation found, 3 undecided comparisons remain,
/// 4 analysis failed at the root.
int run_cli(int argc, const char* const* argv);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitUndecided = 3;
inline constexpr int kExitAnalysisFailed = 4;

}  // namespace relprec

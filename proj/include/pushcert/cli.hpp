#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pushcert {

/// Runs one CLI command. Results go to `out`, diagnostics to `err`.
/// Exit codes: 0 analysis completed (any verdict), 2 invalid input,
/// 3 enumeration cap or budget exceeded, 1 internal failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Fixture suite plus the oracle-agreement grid; prints one line per
/// check and returns the number of failures.
int run_selftest(std::ostream& out);

} // namespace pushcert

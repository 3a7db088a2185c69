// Invariant suites runnable from the command line: every module's
// algebraic and numerical contracts, executed with fixed seeds and
// reported one line per suite.

#pragma once

#include <iosfwd>
#include <vector>

#include "qsys/number_field.hpp"

namespace qsys {

struct SuiteResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;
};

// Runs every suite; deterministic.  A nonzero failure count in any entry
// means the build is unsound.
std::vector<SuiteResult> run_selftest();

// Prints one pass/fail line per suite; returns true iff all passed.
bool report_selftest(const std::vector<SuiteResult>& results, std::ostream& os);

// Exhaustive count of 4x4 matrices over F_q preserving the split
// alternating form, by column backtracking over all candidate columns.
// Independent of the closed-form index formula; q must be prime.
Integer sp4_order_bruteforce(unsigned q);

}  // namespace qsys

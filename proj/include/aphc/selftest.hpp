#pragma once

// Built-in oracle suites behind the `selftest` CLI subcommand: quick
// brute-force cross-checks of the matcher, the code tables, the schedule,
// and the codec round trip. Returns true when everything passed; one line
// is printed per suite.

#include <iosfwd>

namespace aphc::selftest {

bool run_all(std::ostream& out);

}  // namespace aphc::selftest

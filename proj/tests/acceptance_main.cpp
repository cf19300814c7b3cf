// Acceptance suite: one pass/fail line per criterion on stdout, nonzero
// exit when any criterion fails.

#include <iostream>

#include "volterra/report.hpp"

int main() {
    const volterra::AcceptanceReport report =
        volterra::run_acceptance(volterra::Exec::Parallel, &std::cout);
    std::cout << (report.all_passed ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " ("
              << report.total_seconds << " s)\n";
    return report.all_passed ? 0 : 1;
}

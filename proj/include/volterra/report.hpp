#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "volterra/json_io.hpp"
#include "volterra/params.hpp"

namespace volterra {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string details;   ///< deterministic numbers only
    double seconds = 0.0;  ///< wall time, reported outside the JSON document
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    bool all_passed = false;
    double total_seconds = 0.0;
};

/// Run the full acceptance suite. Progress lines (one per criterion, with
/// wall times) go to `progress` when given; the returned structure carries
/// the machine-readable outcome.
AcceptanceReport run_acceptance(Exec exec = Exec::Parallel, std::ostream* progress = nullptr);

/// JSON document for the report command; deliberately excludes wall times
/// so identical runs serialize identically.
Json to_json(const AcceptanceReport& report);

}  // namespace volterra

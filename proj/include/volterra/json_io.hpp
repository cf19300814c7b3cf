#pragma once

#include <json.hpp>

#include "volterra/completeness.hpp"
#include "volterra/discretize.hpp"
#include "volterra/eigensystem.hpp"
#include "volterra/zeros.hpp"

namespace volterra {

/// Field order is fixed so identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

Json to_json(const FEigenfunction& f);
Json to_json(const GEigenfunction& g);
Json to_json(const RootSet& roots);
Json to_json(const GZeroScan& scan);
Json to_json(const GramReport& report);
Json to_json(const MuntzReport& report);
Json to_json(const ConvergenceTable& table);

/// CSV with a header row, '.' decimal separator and LF line endings.
std::string distance_profile_csv(const GramReport& report);
std::string convergence_csv(const ConvergenceTable& table);

}  // namespace volterra

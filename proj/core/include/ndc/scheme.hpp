#pragma once

#include <string>

namespace ndc {

enum class Scheme { Ndc, DcoOsm, AcoOsm };

// Accepts "ndc", "dco-osm"/"dco", "aco-osm"/"aco" (case-insensitive).
Scheme parse_scheme(const std::string& name);

// Canonical lowercase name as written to CSV: ndc, dco-osm, aco-osm.
std::string scheme_name(Scheme scheme);

}  // namespace ndc

#pragma once

// Report serialization. JSON records keep the field order
// structure, check, verdict, witnesses, citation, millis.

#include <string>
#include <vector>

#include "qlab/workbench/checks.hpp"

namespace qlab {

/// A JSON array, one object per record; byte-identical for identical input
/// when timing is off.
std::string report_json(const std::vector<CheckRecord>& records);

/// One line per record plus a summary line.
std::string report_text(const std::vector<CheckRecord>& records);

}  // namespace qlab

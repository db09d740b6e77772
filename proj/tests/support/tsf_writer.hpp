#pragma once

#include <iosfwd>

#include "tsbench/tsf.hpp"

namespace tsbench::testing {

/// Serialises a parsed file back to `.tsf` text; values use 17 significant
/// digits so a re-parse is exact.
void write_tsf(std::ostream& out, const TsfFile& file);

}  // namespace tsbench::testing

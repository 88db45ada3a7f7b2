#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sgt {

/// 17-significant-digit decimal, the round-trip format for all emitted CSV.
std::string format_g17(double v);

/// One CSV row, LF-terminated.
void csv_row(std::ostream& os, const std::vector<std::string>& cells);

/// Worker count used by the deterministic reductions; results are identical
/// for every value, only scheduling changes.
void set_worker_count(unsigned n);
unsigned worker_count();

}  // namespace sgt

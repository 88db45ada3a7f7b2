#include "sgt/io.hpp"

#include <atomic>
#include <cstdio>

namespace sgt {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

namespace {
std::atomic<unsigned> g_workers{1};
}

void set_worker_count(unsigned n) { g_workers.store(n == 0 ? 1 : n); }
unsigned worker_count() { return g_workers.load(); }

}  // namespace sgt

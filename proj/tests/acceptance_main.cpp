#include <cstdio>
#include <string>

#include "sgt/selftest.hpp"

int main() {
  bool ok = false;
  const std::string report = sgt::selftest::run_full(&ok);
  std::fputs(report.c_str(), stdout);
  std::fputs(ok ? "acceptance: ALL PASS\n" : "acceptance: FAILURES PRESENT\n", stdout);
  return ok ? 0 : 1;
}

#include <chrono>
#include <cstdio>
#include <iostream>

#include "strahler/verify.hpp"

int main() {
  int failed = 0;
  strahler::run_acceptance({}, [&](const strahler::CheckResult& res) {
    if (!res.passed) ++failed;
    std::cout << (res.passed ? "PASS " : "FAIL ") << res.id << " " << res.name << ": " << res.detail << std::endl;
  });
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}

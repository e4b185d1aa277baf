#include "qpvi/acceptance.hpp"

#include <iostream>

int main() {
  const auto cfg = qpvi::reference_acceptance_config();
  const auto results = qpvi::run_acceptance(cfg);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << qpvi::format_line(r) << '\n';
    if (!r.pass) ++failed;
  }
  std::cout << (qpvi::kCriterionCount - failed) << '/' << qpvi::kCriterionCount << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}

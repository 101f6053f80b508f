// Dedicated acceptance binary: runs every criterion at full scale and prints
// one pass/fail line per criterion. Exit status 0 iff all pass.
#include <iostream>

#include "qaplab/suite.hpp"

int main() {
  qaplab::SuiteOptions opts;
  auto results = qaplab::run_acceptance_suite(opts, &std::cout);
  const bool ok = qaplab::all_passed(results);
  std::cout << (ok ? "acceptance: all criteria passed" : "acceptance: FAILURES present")
            << std::endl;
  return ok ? 0 : 1;
}

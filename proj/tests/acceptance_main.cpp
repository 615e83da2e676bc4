#include <iostream>

#include "autfam/acceptance.hpp"

int main() {
  const int failures = autfam::run_acceptance_suite(std::cout);
  if (failures != 0) {
    std::cerr << failures << " criteria failed\n";
    return 1;
  }
  return 0;
}

#include <cstdlib>
#include <iostream>
#include <string>

#include "pfister/acceptance.hpp"

// Usage: pfister_acceptance [criterion ids...]
int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const auto results = pfister::run_acceptance(only);
  std::cout << pfister::format_results(results);
  return pfister::all_passed(results) ? 0 : 1;
}

#include <iostream>

#include "pfister/cli.hpp"

int main(int argc, char** argv) { return pfister::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr); }

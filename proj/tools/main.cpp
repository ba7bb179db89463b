#include <iostream>

#include "flipforge/cli.hpp"

int main(int argc, char** argv) {
  return flipforge::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

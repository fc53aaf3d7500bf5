#include <iostream>

#include "tropcorr/cli.hpp"

int main(int argc, char** argv) {
  return tropcorr::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cin, std::cout, std::cerr);
}

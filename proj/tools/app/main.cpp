#include <iostream>

#include "tradeopt/cli.hpp"

int main(int argc, char** argv) {
  return tradeopt::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "blackbench/cli.hpp"

int main(int argc, char** argv) {
  return blackbench::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

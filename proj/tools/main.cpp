#include <iostream>
#include <string>
#include <vector>

#include "catrank/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return catrank::run_cli(args, std::cout, std::cerr);
}

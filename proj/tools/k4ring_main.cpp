#include <iostream>
#include <string>
#include <vector>

#include "k4ring/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return k4ring::cli::run_cli(args, std::cin, std::cout, std::cerr);
}

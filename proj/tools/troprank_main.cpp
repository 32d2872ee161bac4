#include <iostream>
#include <string>
#include <vector>

#include "troprank/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return troprank::cli::run(args, std::cout, std::cerr);
}

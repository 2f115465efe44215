#include <iostream>
#include <string>
#include <vector>

#include "edgex/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return edgex::cli::run(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "expgof/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return expgof::run_command(args, std::cout, std::cerr);
}

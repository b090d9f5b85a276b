#include <iostream>
#include <string>
#include <vector>

#include "spheretik/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return spheretik::run_command(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "prefforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return prefforge::run_cli(args, std::cout, std::cerr);
}

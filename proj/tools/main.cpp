#include <iostream>
#include <string>
#include <vector>

#include "meanslab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return meanslab::run_cli(args, std::cout, std::cerr);
}

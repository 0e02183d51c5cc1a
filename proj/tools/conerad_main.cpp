#include <iostream>
#include <string>
#include <vector>

#include "conerad/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return conerad::run_cli(args, std::cout, std::cerr);
}

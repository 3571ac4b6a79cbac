#include <iostream>

#include "nkv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nkv::run_cli(args, std::cout, std::cerr);
}

#include <iostream>

#include "rms/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rms::run(args, std::cin, std::cout, std::cerr);
}

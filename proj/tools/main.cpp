#include <iostream>
#include <string>
#include <vector>

#include "kloos/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kloos::run(args, std::cout, std::cerr);
}

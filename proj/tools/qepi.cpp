#include <iostream>
#include <string>
#include <vector>

#include "qepi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qepi::cli::run(args, std::cout, std::cerr);
}

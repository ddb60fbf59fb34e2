#include <iostream>
#include <string>
#include <vector>

#include "mnols/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return mnols::cli::run(args, std::cout, std::cerr);
}

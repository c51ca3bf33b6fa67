#include <iostream>
#include <string>
#include <vector>

#include "ivdiff/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ivdiff::cli::run(args, std::cout, std::cerr);
}

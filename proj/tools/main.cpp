#include <iostream>

#include "mvr_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mvr::cli::run(args, std::cout, std::cerr);
}

#include <iostream>

#include "psbent/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return psbent::cli::main_entry(args, std::cin, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "implreg/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return implreg::cli::run(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "dyson/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return dyson::cli::run(args, std::cout, std::cerr);
}

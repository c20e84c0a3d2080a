#include <iostream>
#include <string>
#include <vector>

#include "twistfind/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return twistfind::cli::run(args, std::cout, std::cerr);
}

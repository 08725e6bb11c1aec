#include <iostream>
#include <string>
#include <vector>

#include "antitai/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return antitai::cli_main(args, std::cout, std::cerr);
}

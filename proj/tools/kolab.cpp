#include <iostream>
#include <string>
#include <vector>

#include "kolab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return kolab::run_command(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "osearch/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return osearch::cli::run(args, std::cout, std::cerr);
}

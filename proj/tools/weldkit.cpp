#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return weldkit::cli::run(std::move(args), std::cout, std::cerr);
}

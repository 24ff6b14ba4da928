#include <iostream>
#include <string>
#include <vector>

#include "bicens/parallel.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  bicens::configure_threads();
  std::vector<std::string> args(argv, argv + argc);
  return bicens::cli::run(args, std::cout, std::cerr);
}

#include <iostream>

#include "vibcav/cli.hpp"

int main(int argc, char** argv) {
  return vibcav::cli::run(argc, argv, std::cout, std::cerr);
}

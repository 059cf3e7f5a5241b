#include <iostream>

#include "torusbound_cli/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return torusbound::cli::run(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "mtg/cli.hpp"

int main(int argc, char** argv) {
  return mtg::run_command(argc, argv, std::cout, std::cerr);
}

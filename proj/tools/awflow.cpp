#include <iostream>

#include "awflow/cli/commands.hpp"

int main(int argc, char** argv) {
  return awflow::cli::main_entry(argc, argv, std::cout, std::cerr);
}

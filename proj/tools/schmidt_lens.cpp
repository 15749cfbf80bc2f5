#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  return schmidt_lens::cli::main_with_args(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "cappedlp/cli.hpp"

int main(int argc, char** argv) {
  return cappedlp::cli::run_command({argv + 1, argv + argc}, std::cout, std::cerr);
}

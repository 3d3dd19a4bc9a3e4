#include <iostream>

#include "tracelab/cli.hpp"

int main(int argc, char** argv) {
  return tracelab::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

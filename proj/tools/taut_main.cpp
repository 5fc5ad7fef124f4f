#include <iostream>

#include "taut/cli.hpp"

int main(int argc, char** argv) {
  const taut::cli::Result r = taut::cli::run(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}

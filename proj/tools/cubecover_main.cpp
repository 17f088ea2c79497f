#include <iostream>
#include <vector>

#include "cubecover/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cubecover::cli::dispatch(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "cover_spectra/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cover_spectra::cli::run(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "hpmkit/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const hpmkit::cli::CommandResult result = hpmkit::cli::run(args);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}

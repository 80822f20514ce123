#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hyperred/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> seed;
  if (const char* env = std::getenv(hyperred::cli::kSeedEnvironment)) seed = env;
  return hyperred::cli::main_entry(args, std::cout, std::cerr, seed);
}

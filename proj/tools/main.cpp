#include <iostream>
#include <string>
#include <vector>

#include "cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto result = lpsign::cli::cmd_dispatch(args);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}

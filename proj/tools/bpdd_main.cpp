#include <iostream>
#include <string>
#include <vector>

#include "bpdd/cli.hpp"
#include "bpdd/errors.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return bpdd::cli::run(bpdd::cli::parse_args(args));
  } catch (const bpdd::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace wimax::cli;
  CliConfig config;
  try {
    config = parse_args(argc, argv);
  } catch (const HelpRequested& help) {
    std::cout << help.what();
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "wimaxsim: " << e.what() << "\nRun with --help for usage.\n";
    return 1;
  }
  return run(config, std::cout, std::cerr);
}

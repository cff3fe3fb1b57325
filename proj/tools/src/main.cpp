#include <iostream>
#include <string>
#include <vector>

#include "dirmono/cli/config.hpp"
#include "dirmono/cli/report.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  dirmono::cli::RunConfig config;
  try {
    config = dirmono::cli::parse_config(args);
  } catch (const dirmono::cli::HelpRequested& help) {
    std::cout << help.what();
    return 0;
  } catch (const dirmono::cli::UsageError& e) {
    std::cerr << "dirmono: " << e.what() << "\nrun 'dirmono check --help' for usage\n";
    return 2;
  }
  return dirmono::cli::run(config, std::cout, std::cerr);
}

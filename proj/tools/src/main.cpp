#include <string>
#include <vector>

#include "paps_cli/cli.hpp"

int main(int argc, char** argv) {
  return paps::cli::run_command(std::vector<std::string>(argv, argv + argc));
}

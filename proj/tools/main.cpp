#include <iostream>

#include "schurmarc/cli.hpp"

int main(int argc, char** argv) {
  return schurmarc::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

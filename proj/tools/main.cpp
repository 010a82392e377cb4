#include <iostream>
#include <string>
#include <vector>

#include "vmb/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return vmb::commands::run_command(args, std::cout, std::cerr);
}

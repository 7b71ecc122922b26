#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  intval::cli::CommandResult r = intval::cli::run(args);
  if (r.json) {
    std::cout << r.json->dump(2) << "\n";
  } else if (r.exit_code == intval::cli::input_error || r.exit_code == intval::cli::budget_exhausted) {
    std::cerr << r.text;
  } else {
    std::cout << r.text;
  }
  return r.exit_code;
}

#include <iostream>
#include <variant>

#include "bumproute/cli_args.hpp"

int main(int argc, char** argv) {
  auto parsed = bumproute::cli::parse_command_line(argc, argv, std::cout, std::cerr);
  if (auto* code = std::get_if<int>(&parsed)) return *code;
  return bumproute::cli::run(std::get<bumproute::cli::RunConfig>(parsed), std::cout, std::cerr);
}

#include <iostream>

#include "bohr_cli/cli.hpp"

int main(int argc, char** argv) { return bohr::cli::run(argc, argv, std::cout, std::cerr); }

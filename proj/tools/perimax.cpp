#include <iostream>

#include "perimax/cli.hpp"

int main(int argc, char** argv) { return perimax::cli::run_cli(argc, argv, std::cout, std::cerr); }

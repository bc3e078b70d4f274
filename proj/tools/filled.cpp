#include <iostream>

#include "filled/cli.hpp"

int main(int argc, char** argv) { return filled::cli::run_command(argc, argv, std::cout, std::cerr); }

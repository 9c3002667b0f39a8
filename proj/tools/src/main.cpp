#include <iostream>

#include "hvcheck/cli/commands.hpp"

int main(int argc, char** argv) { return hvcheck::cli::run(argc, argv, std::cout, std::cerr); }

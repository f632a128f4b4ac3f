#include <iostream>

#include "stabsel/cli.hpp"

int main(int argc, char** argv) { return stabsel::cli::main(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "dualspace/cli.hpp"

int main(int argc, char** argv) { return dualspace::cli::main(argc, argv, std::cout, std::cerr); }

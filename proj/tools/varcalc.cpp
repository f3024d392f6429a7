#include "varcalc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return varcalc::cli::main(argc, argv, std::cout, std::cerr); }

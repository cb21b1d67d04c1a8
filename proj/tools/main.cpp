#include <iostream>

#include "radmul/cli.hpp"

int main(int argc, char** argv) { return radmul::run_cli(argc, argv, std::cout, std::cerr); }

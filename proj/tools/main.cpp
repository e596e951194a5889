#include <iostream>

#include "rftswim/cli.hpp"

int main(int argc, char** argv) { return rftswim::run_cli(argc, argv, std::cout, std::cerr); }

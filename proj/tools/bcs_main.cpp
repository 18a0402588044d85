#include "bcs/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bcs::run_cli(argc, argv, std::cout, std::cerr); }

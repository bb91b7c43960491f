#include "ufrac/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ufrac::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "ulmforge/cli.hpp"

int main(int argc, char** argv) { return ulmforge::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "edgebench/cli.hpp"

int main(int argc, char** argv) { return edgebench::run_cli(argc, argv, std::cout, std::cerr); }

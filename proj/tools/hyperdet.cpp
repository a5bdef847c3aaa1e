#include <iostream>

#include "hyperdet/cli.hpp"

int main(int argc, char** argv) { return hyperdet::run_cli(argc, argv, std::cout, std::cerr); }

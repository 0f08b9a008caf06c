#include <iostream>

#include "fernlab/cli.hpp"

int main(int argc, char** argv) { return fernlab::run_cli(argc, argv, std::cout, std::cerr); }

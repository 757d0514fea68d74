#include <iostream>

#include "macrolab/cli.hpp"

int main(int argc, char** argv) { return macrolab::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "mrfgrid/cli/cli.hpp"

int main(int argc, char** argv) { return mrfgrid::run_cli(argc, argv, std::cout, std::cerr); }

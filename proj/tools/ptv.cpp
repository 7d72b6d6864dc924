#include <iostream>

#include "ptv/cli.hpp"

int main(int argc, char** argv) { return ptv::run_cli(argc, argv, std::cout, std::cerr); }

#include "fock/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fock::run_cli(argc, argv, std::cout, std::cerr); }

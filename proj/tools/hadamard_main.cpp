#include "hadamard/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hadamard::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return sclca::cli::run(argc, argv, std::cout, std::cerr); }

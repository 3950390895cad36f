#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return divdiv::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "tfconc/cli.hpp"

int main(int argc, char** argv) { return tfconc::cli::run(argc, argv, std::cout, std::cerr); }

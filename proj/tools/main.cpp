#include <iostream>

#include "scargeo/cli.hpp"

int main(int argc, char** argv) { return scargeo::cli::run(argc, argv, std::cout, std::cerr); }

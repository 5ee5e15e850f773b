#include <iostream>

#include "nematic/cli.hpp"

int main(int argc, char** argv) { return nematic::cli::run(argc, argv, std::cout, std::cerr); }

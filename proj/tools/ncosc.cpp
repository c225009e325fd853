#include <iostream>

#include "ncosc/cli.hpp"

int main(int argc, char** argv) { return ncosc::cli::run(argc, argv, std::cout, std::cerr); }

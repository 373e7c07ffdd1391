#include <iostream>

#include "ncgcurv/cli.hpp"

int main(int argc, char** argv) { return ncgcurv::cli::run(argc, argv, std::cout, std::cerr); }

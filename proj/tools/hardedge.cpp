#include <iostream>

#include "hardedge/cli.hpp"

int main(int argc, char** argv) { return hardedge::cli::run(argc, argv, std::cout, std::cerr); }

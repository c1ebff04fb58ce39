#include <iostream>

#include "kdl/cli.hpp"

int main(int argc, char** argv) { return kdl::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "entropykit/cli.hpp"

int main(int argc, char** argv) { return entropykit::cli::run(argc, argv, std::cout, std::cerr); }

#include "entkit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return entkit::cli::run(argc, argv, std::cout, std::cerr); }

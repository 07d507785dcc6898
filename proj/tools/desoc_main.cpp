#include <iostream>

#include "desoc/cli.hpp"

int main(int argc, char** argv) { return desoc::cli::run(argc, argv, std::cout, std::cerr); }

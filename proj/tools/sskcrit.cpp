#include <iostream>

#include "sskcrit/cli.hpp"

int main(int argc, char** argv) { return sskcrit::cli::run(argc, argv, std::cout, std::cerr); }

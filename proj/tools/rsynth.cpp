#include <iostream>

#include "rsynth/cli.hpp"

int main(int argc, char** argv) { return rsynth::cli::run(argc, argv, std::cout, std::cerr); }

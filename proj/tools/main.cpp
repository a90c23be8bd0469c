#include <iostream>

#include "recon/cli.hpp"

int main(int argc, char** argv) { return recon::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "turing_voter/cli.hpp"

int main(int argc, char** argv) { return tvoter::cli::run(argc, argv, std::cout, std::cerr); }

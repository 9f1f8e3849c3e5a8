#include <iostream>

#include "spvote/cli.hpp"

int main(int argc, char** argv) { return spvote::cli::run(argc, argv, std::cout, std::cerr); }

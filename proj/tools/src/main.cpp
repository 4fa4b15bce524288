#include "scamscope/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return scamscope::cli::run(argc, argv, std::cout, std::cerr); }

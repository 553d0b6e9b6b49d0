#include <iostream>

#include "rotlaw/cli.hpp"

int main(int argc, char** argv) { return rotlaw::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "strahler/commands.hpp"

int main(int argc, char** argv) { return strahler::run_cli(argc, argv, std::cout, std::cerr); }

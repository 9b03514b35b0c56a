#include <iostream>

#include "pingpong/cli.hpp"

int main(int argc, char** argv) { return pingpong::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "rrm/cli.hpp"

int main(int argc, char** argv) { return rrm::run_cli(argc, argv, std::cout, std::cerr); }

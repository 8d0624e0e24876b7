#include "dgap/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dgap::run_cli(argc, argv, std::cout, std::cerr); }

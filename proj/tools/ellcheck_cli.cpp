#include <iostream>

#include "ellcheck/cli.hpp"

int main(int argc, char** argv) { return ellcheck::run_cli(argc, argv, std::cout, std::cerr); }

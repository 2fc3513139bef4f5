#include <iostream>

#include "rcrt/cli.hpp"

int main(int argc, char** argv) { return rcrt::run_cli(argc, argv, std::cout, std::cerr); }

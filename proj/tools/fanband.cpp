#include <iostream>

#include "fanband/cli.hpp"

int main(int argc, char** argv) { return fanband::run_command(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "grassmann/cli.hpp"

int main(int argc, char** argv) { return grassmann::cli_main(argc, argv, std::cout, std::cerr); }

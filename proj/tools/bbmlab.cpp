#include <iostream>

#include "bbm/cli.hpp"

int main(int argc, char** argv) { return bbm::cli_main(argc, argv, std::cout, std::cerr); }

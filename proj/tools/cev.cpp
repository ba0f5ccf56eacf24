#include <iostream>

#include "cev/cli/app.hpp"

int main(int argc, char** argv) { return cev::run_cli(argc, argv, std::cout, std::cerr); }

#include "telegate/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return telegate::cli::run_cli(argc, argv, std::cout, std::cerr); }

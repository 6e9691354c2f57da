#include <iostream>

#include "growup/cli.hpp"

int main(int argc, char** argv) { return growup::cli::run(argc, argv, std::cout, std::cerr); }

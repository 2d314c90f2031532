#include <iostream>

#include "banach/cli.hpp"

int main(int argc, char** argv) { return banach::run(argc, argv, std::cout, std::cerr); }

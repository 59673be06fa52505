#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return convex1d::cli::run(argc, argv, std::cout, std::cerr); }

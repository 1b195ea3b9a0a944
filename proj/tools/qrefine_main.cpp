#include <iostream>

#include "qrefine/commands.hpp"

int main(int argc, char** argv) { return qrefine::run_cli(argc, argv, std::cout, std::cerr); }

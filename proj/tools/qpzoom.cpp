#include <iostream>

#include "qpzoom/cli.hpp"

int main(int argc, char** argv) { return qpzoom::cli::run(argc, argv, std::cout, std::cerr); }

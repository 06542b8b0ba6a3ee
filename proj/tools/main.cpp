#include <iostream>

#include "mplf/cli.hpp"

int main(int argc, char** argv) { return mplf::cli::run(argc, argv, std::cout, std::cerr); }

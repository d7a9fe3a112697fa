#include <iostream>

#include "nvsign/cli.hpp"

int main(int argc, char** argv) { return nvsign::cli::main_entry(argc, argv, std::cout, std::cerr); }

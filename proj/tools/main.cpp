#include <iostream>

#include "bhsp/cli.hpp"

int main(int argc, char** argv) { return bhsp::cli::main_entry(argc, argv, std::cout, std::cerr); }

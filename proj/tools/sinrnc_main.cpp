#include <iostream>

#include "sinrnc/cli.hpp"

int main(int argc, char** argv) { return sinrnc::cli::run(argc, argv, std::cout, std::cerr); }

#include "covfun/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return covfun::cli::run(argc, argv, std::cout, std::cerr); }

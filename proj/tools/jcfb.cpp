#include <iostream>

#include "jcfb/cli.hpp"

int main(int argc, char** argv) { return jcfb::cli::run(argc, argv, std::cout, std::cerr); }

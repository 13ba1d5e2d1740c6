#include <iostream>

#include "dio/cli.hpp"

int main(int argc, char** argv) { return dio::cli::dispatch(argc, argv, std::cout, std::cerr); }

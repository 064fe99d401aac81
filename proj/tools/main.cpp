#include <iostream>

#include "ystruct/cli.hpp"

int main(int argc, char** argv) { return ystruct::cli_dispatch(argc, argv, std::cout, std::cerr); }

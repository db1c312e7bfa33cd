#include <iostream>

#include "tatsp/cli.hpp"

int main(int argc, char** argv)
{
    return tatsp::cli::run(argc, argv, std::cout, std::cerr);
}

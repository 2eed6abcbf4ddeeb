#include "bsat/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return bsat::cli::run(argc, argv, std::cout, std::cerr);
}

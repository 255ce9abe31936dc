#include "ruinlab/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return ruinlab::cli::run_cli(argc, argv, std::cout, std::cerr);
}

#include "sqzprm/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return sqzprm::run_cli(argc, argv, std::cout, std::cerr);
}

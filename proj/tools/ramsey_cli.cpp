#include "ramsey/cli.hpp"

#include <iostream>

int main(int argc, char ** argv)
{
    return ramsey::cli::run(argc, argv, std::cout, std::cerr);
}

#include <chronoplot/cli/commands.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    return chronoplot::cli::run(argc, argv, std::cout, std::cerr);
}

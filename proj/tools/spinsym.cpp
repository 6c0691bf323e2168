#include <spinsym/cli.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    return spinsym::cli::run(argc, argv, std::cout, std::cerr);
}

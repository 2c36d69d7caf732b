#include <iostream>

#include "bdk/cli.hpp"

int main(int argc, char** argv) {
    return bdk::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

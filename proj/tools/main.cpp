#include <iostream>

#include "ramcount/cli.hpp"

int main(int argc, char** argv) {
    return ramcount::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

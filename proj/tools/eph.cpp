#include <iostream>

#include "eph/cli.hpp"

int main(int argc, char** argv) {
    return eph::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

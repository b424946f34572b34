#include "probcheck/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return probcheck::run_cli(argc, argv, std::cout, std::cerr);
}

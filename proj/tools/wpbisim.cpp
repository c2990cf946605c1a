#include <iostream>

#include "wpbisim/cli.hpp"

int main(int argc, char** argv) {
    return wpb::run_cli(argc, argv, std::cout, std::cerr);
}

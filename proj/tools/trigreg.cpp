#include "trigreg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return trigreg::cli::dispatch_argv(argc, argv, std::cout, std::cerr);
}

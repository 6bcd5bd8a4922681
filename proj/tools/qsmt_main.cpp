#include <iostream>

#include "qsmt/cli.hpp"

int main(int argc, char **argv) {
    return qsmt::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "predprey/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return predprey::run_cli(args, std::cout, std::cerr);
}

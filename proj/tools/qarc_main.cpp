#include <iostream>
#include <string>
#include <vector>

#include "qarc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qarc::run_cli(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "endoscopy_kit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ek::run_cli(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "netprofile/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return netprofile::run_cli(args, std::cout, std::cerr);
}

// thermal_bound CLI entry point; all logic lives in the library so the
// command surface is testable in-process.
#include <iostream>
#include <string>
#include <vector>

#include "thermal_bound/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return thermal_bound::cli::run(args, std::cout, std::cerr);
}

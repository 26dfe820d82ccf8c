#include <iostream>
#include <string>
#include <vector>

#include "flatgraph/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return flatgraph::cli::run(args, std::cout, std::cerr);
}

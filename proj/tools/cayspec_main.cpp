#include <iostream>
#include <string>
#include <vector>

#include "cayspec/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cayspec::cli::run(std::move(args), std::cout, std::cerr);
}

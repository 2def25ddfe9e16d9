#include <iostream>
#include <string>
#include <vector>

#include "toda/cli.hpp"

int main(int argc, char** argv) {
    return toda::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

#include <iostream>
#include <vector>

#include "cremona/report.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cremona::cli_main(args, std::cout, std::cerr);
}

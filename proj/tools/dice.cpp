#include <unistd.h>

#include <iostream>

#include "dice/cli.hpp"

int main(int argc, char** argv) {
    auto parsed = dice::cli::parse_args(argc, argv, std::cout, std::cerr);
    if (!parsed.config) return parsed.exit_code;
    parsed.config->interactive = isatty(STDIN_FILENO) != 0;
    return dice::cli::run(*parsed.config, std::cin, std::cout, std::cerr);
}

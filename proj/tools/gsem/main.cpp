#include <iostream>
#include <string>
#include <vector>

#include <gsem/cli/commands.hpp>

int main(int argc, char** argv) {
    return gsem::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

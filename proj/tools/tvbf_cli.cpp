#include "tvbf/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tvbf::cli::run(std::move(args), std::cout, std::cerr);
}

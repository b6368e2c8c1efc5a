#include <string>
#include <vector>

#include "pqsquares/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pqs::run(args);
}

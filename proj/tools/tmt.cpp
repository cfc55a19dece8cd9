#include "tmt/cli.hpp"

int main(int argc, char** argv) {
    return tmt::cli::main(argc, argv);
}

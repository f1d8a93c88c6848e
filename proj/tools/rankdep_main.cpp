#include "rankdep/cli.hpp"

int main(int argc, char** argv) {
    return rankdep::run_cli(argc, argv);
}

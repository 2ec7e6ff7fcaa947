#include "fraclattice/cli.hpp"

int main(int argc, char** argv) { return fraclattice::run_cli(argc, argv); }

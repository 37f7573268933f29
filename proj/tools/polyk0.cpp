#include "polyk0/cli.hpp"

int main(int argc, char** argv) { return polyk0::run_subcommand(argc, argv); }

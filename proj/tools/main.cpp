#include "fgllab/cli.hpp"

int main(int argc, char** argv) { return fgllab::cli_main(argc, argv); }

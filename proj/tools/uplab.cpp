#include "uplab/cli.hpp"

int main(int argc, char** argv) { return uplab::cli::main(argc, argv); }

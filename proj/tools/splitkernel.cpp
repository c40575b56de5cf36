#include "splitkernel/cli.hpp"

int main(int argc, char** argv) { return splitkernel::cli::run(argc, argv); }

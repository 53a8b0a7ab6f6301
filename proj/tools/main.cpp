#include "cli.hpp"

int main(int argc, char** argv) { return wsnloc::cli::run(argc, argv); }

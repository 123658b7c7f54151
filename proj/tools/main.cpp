#include "cli.hpp"

int main(int argc, char** argv) { return dec::cli::run(argc, argv); }

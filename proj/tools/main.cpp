#include "chiral/cli.hpp"

int main(int argc, char** argv) { return chiral::cli::run(argc, argv); }

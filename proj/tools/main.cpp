#include "cli.hpp"

int main(int argc, char** argv) { return biorth::cli::run(argc, argv); }

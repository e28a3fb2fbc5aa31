#include "graphonlab/cli.hpp"

int main(int argc, char** argv) { return graphonlab::cli::run(argc, argv); }

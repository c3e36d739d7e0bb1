#include "vertexlab/cli.hpp"

int main(int argc, char** argv) { return vertexlab::cli::main_entry(argc, argv); }

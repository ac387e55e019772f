#include "cli.hpp"

int main(int argc, char** argv) { return chroma::cli::main_entry(argc, argv); }

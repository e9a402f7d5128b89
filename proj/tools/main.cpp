#include "ordclust/cli.hpp"

int main(int argc, char** argv) { return ordclust::cli::main_entry(argc, argv); }

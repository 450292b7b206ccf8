#include "masspack/cli.hpp"

int main(int argc, char** argv) { return masspack::main_entry(argc, argv); }

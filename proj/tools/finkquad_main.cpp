#include "finkquad/cli.hpp"

int main(int argc, char** argv) { return finkquad::cli::main_entry(argc, argv); }

#include "cli.hpp"

int main(int argc, char** argv) { return majorana::cli::main_entry(argc, argv); }

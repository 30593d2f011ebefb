#include "mhs/cli/run.hpp"

int main(int argc, char** argv) { return mhs::cli::main_entry(argc, argv); }

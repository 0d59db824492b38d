#include "commands.hpp"

int main(int argc, char** argv) { return sdisde::cli::main(argc, argv); }

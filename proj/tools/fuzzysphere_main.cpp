#include "fuzzy/cli.hpp"

int main(int argc, char** argv) { return fuzzy::run_cli(argc, argv); }

#include "cli_core.hpp"

int main(int argc, char** argv) { return dcsb::cli::run_cli(argc, argv); }

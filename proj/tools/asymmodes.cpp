#include "cli.hpp"

int main(int argc, char** argv) { return asymmodes::cli::run(argc, argv); }

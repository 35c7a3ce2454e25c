#include "winglock/cli.hpp"

int main(int argc, char** argv) { return winglock::cli::run(argc, argv); }

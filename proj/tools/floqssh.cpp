#include "floqssh/cli.hpp"

int main(int argc, char** argv) { return floqssh::cli::run(argc, argv); }

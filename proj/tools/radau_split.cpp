#include "radau_cli.hpp"

int main(int argc, char** argv) { return radau::cli::run(argc, argv); }

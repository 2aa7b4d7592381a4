#include "signalgame/cli.hpp"

int main(int argc, char** argv) { return signalgame::cli::run(argc, argv); }

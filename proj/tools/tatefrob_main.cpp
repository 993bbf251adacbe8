#include "tatefrob/cli.hpp"

int main(int argc, char** argv) { return tatefrob::cli::run(argc, argv); }

#include "cli.hpp"

int main(int argc, char** argv) { return widecount::cli::run(argc, argv); }

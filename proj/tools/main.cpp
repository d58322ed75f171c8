#include "cli.hpp"

int main(int argc, char** argv) { return roycrit_cli::run(argc, argv); }

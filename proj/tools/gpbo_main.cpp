#include "gpbo/cli.hpp"

int main(int argc, char** argv) { return gpbo::cli_main(argc, argv); }

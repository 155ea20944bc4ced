#include "risopt/harness.hpp"

int main(int argc, char** argv) { return risopt::cli_main(argc, argv); }

#include "wps/cli/run.hpp"

int main(int argc, char** argv) { return wps::cli::run(argc, argv); }

#include "commands.hpp"

int main(int argc, char** argv) { return hyharm::cli::run_cli(argc, argv); }

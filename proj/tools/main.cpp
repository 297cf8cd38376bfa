#include "nehari/verify_cli.hpp"

int main(int argc, char** argv) { return nehari::cli::run_cli(argc, argv); }

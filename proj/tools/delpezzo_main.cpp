#include "delpezzo/cli.hpp"

int main(int argc, char** argv) { return delpezzo::cli::main_entry(argc, argv); }

#include "cpc/cli.hpp"

int main(int argc, char** argv) { return cpc::cli::dispatch(argc, argv); }

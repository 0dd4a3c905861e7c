#include "subsetcodec/cli.hpp"

int main(int argc, char** argv) { return subsetcodec::dispatch(argc, argv); }

#include "coxlog/certify.hpp"

int main(int argc, char** argv) { return coxlog::run_cli(argc, argv); }

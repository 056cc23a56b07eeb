#include "bench_app.hpp"

int main(int argc, char** argv) { return radial_bench::run(argc, argv); }

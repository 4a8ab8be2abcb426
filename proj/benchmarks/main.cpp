#include <benchmark/benchmark.h>

// The distro's static benchmark_main archive is LTO bytecode from another
// compiler release, so the entry point lives here against the shared library.
BENCHMARK_MAIN();

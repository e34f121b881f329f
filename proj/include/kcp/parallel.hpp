#pragma once

// Process-wide switch between the serial reference kernels and the OpenMP
// ones. Results are bit-identical either way; the switch exists so tests
// and the benchmark can pin a path.

namespace kcp {

void set_max_threads(int n); // 0 restores the OpenMP default
int max_threads();
bool parallel_enabled();

} // namespace kcp

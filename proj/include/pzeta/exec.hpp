#pragma once

namespace pzeta {

/// Selects between the OpenMP kernels and their serial reference versions.
/// Both produce identical results; the serial path exists for testing and
/// benchmarking.
enum class Exec { Serial, Parallel };

/// Number of worker threads the parallel kernels will use.
int worker_count();
/// Overrides the worker count (0 restores the OpenMP default).
void set_worker_count(int count);

}  // namespace pzeta

#pragma once

namespace dagcover {

/// Selects the execution path of a data-parallel kernel. `serial` is the
/// reference implementation; `parallel` uses OpenMP and must produce
/// identical results.
enum class Exec { serial, parallel };

/// Threads OpenMP would use for a parallel region (1 without OpenMP).
int max_threads();
/// Caps the threads later parallel regions use (no-op without OpenMP).
void set_max_threads(int threads);

}  // namespace dagcover

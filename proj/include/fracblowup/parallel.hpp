#pragma once

namespace fracblowup {

/// Kernel dispatch: OpenMP-parallel loops or the serial reference path.
/// Both produce bitwise-identical results; the serial path is kept for
/// testing and as the baseline in the benchmark target.
enum class Parallelism { Serial, OpenMP };

/// Applies the FRACBLOWUP_THREADS cap (if set) to the OpenMP runtime.
/// Returns the thread count in effect.
int apply_thread_cap();

}  // namespace fracblowup

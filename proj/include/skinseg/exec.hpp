#pragma once

namespace skinseg {

// Execution policy for the batch kernels. Serial is the reference
// implementation; Parallel runs the same per-window code under OpenMP.
// Both produce bit-identical results.
enum class Exec { Serial, Parallel };

}  // namespace skinseg

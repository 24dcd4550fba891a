#pragma once

namespace sslab {

// Reads SEMISTABLE_LAB_THREADS once and caps the OpenMP team size accordingly.
// Safe to call repeatedly; later calls are no-ops.
void configure_threads();

int max_threads();

}  // namespace sslab

#pragma once

namespace bicens {

// Applies the BICENS_THREADS cap (if set to a positive integer) to the
// OpenMP runtime and returns the resulting thread count.
int configure_threads();

int max_threads();

}  // namespace bicens

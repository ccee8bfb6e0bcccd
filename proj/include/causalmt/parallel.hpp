#pragma once

namespace causalmt {

// Worker count for the OpenMP kernels: hardware threads, capped by the
// CAUSALMT_THREADS environment variable when set. Always >= 1.
int effective_threads();

}  // namespace causalmt

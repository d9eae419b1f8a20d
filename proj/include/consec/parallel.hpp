#pragma once

namespace consec {

/// Environment variable that overrides the default worker count.
inline constexpr const char* kWorkersEnv = "CONSEC_THREADS";

/// Worker count to use: `requested` when positive, otherwise CONSEC_THREADS
/// when it holds a positive integer, otherwise the OpenMP default.
int resolve_workers(int requested = 0);

}  // namespace consec

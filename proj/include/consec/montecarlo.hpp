#pragma once

#include <cstdint>
#include <string>

#include "consec/shape.hpp"

namespace consec {

inline constexpr std::uint64_t kMcBatchSize = 4096;

struct McEstimate {
  SystemShape shape;
  double q = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t failures = 0;
  double p_hat = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// "normal" or "wilson" (used when failures is 0 or samples).
  std::string interval;
  std::uint64_t seed = 0;
  std::string generator = "splitmix64";
  std::uint64_t batch_size = kMcBatchSize;
};

/// Frequency estimate of the failure probability at component failure
/// probability q. Samples are drawn in batches of kMcBatchSize; batch b uses
/// its own SplitMix64 stream seeded from (seed, b), so the result depends
/// only on the arguments and not on the worker count.
McEstimate estimate_failure_probability(const SystemShape& shape, double q,
                                        std::uint64_t samples, std::uint64_t seed,
                                        int workers = 0);

}  // namespace consec

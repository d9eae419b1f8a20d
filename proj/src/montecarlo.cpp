#include "consec/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "consec/errors.hpp"
#include "consec/oracle.hpp"
#include "consec/parallel.hpp"

namespace consec {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr double kZ95 = 1.959963984540054;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return mix(state_ += kGolden); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch) {
  return mix(seed ^ mix(batch + kGolden));
}

}  // namespace

McEstimate estimate_failure_probability(const SystemShape& shape, double q,
                                        std::uint64_t samples, std::uint64_t seed,
                                        int workers) {
  if (!(q >= 0.0 && q <= 1.0)) throw ShapeError("q must lie in [0, 1]");
  if (samples < 1) throw ShapeError("at least one sample is required");

  const WindowDetector detector(shape);
  const std::uint64_t batches = (samples + kMcBatchSize - 1) / kMcBatchSize;
  const std::uint64_t cells = shape.volume();
  std::uint64_t failures = 0;

#pragma omp parallel num_threads(resolve_workers(workers)) reduction(+ : failures)
  {
    auto scratch = detector.make_scratch();
    std::vector<std::uint8_t> config(cells);
#pragma omp for schedule(dynamic)
    for (std::uint64_t b = 0; b < batches; ++b) {
      SplitMix64 rng(batch_seed(seed, b));
      const std::uint64_t count = std::min(kMcBatchSize, samples - b * kMcBatchSize);
      for (std::uint64_t i = 0; i < count; ++i) {
        for (auto& c : config) c = rng.uniform() < q ? 1 : 0;
        if (detector.has_failure(config, scratch)) ++failures;
      }
    }
  }

  const double n = static_cast<double>(samples);
  const double p_hat = static_cast<double>(failures) / n;
  const double std_error = std::sqrt(p_hat * (1.0 - p_hat) / n);
  double low = 0.0, high = 0.0;
  std::string interval;
  if (failures == 0 || failures == samples) {
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double centre = (p_hat + z2 / (2.0 * n)) / denom;
    const double half = kZ95 / denom * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));
    interval = "wilson";
    low = std::clamp(centre - half, 0.0, 1.0);
    high = std::clamp(centre + half, 0.0, 1.0);
  } else {
    interval = "normal";
    low = std::max(0.0, p_hat - kZ95 * std_error);
    high = std::min(1.0, p_hat + kZ95 * std_error);
  }
  return McEstimate{.shape = shape,
                    .q = q,
                    .samples = samples,
                    .failures = failures,
                    .p_hat = p_hat,
                    .std_error = std_error,
                    .ci_low = std::min(low, p_hat),
                    .ci_high = std::max(high, p_hat),
                    .interval = std::move(interval),
                    .seed = seed,
                    .generator = "splitmix64",
                    .batch_size = kMcBatchSize};
}

}  // namespace consec

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "consec/polynomial.hpp"
#include "consec/shape.hpp"

namespace consec {

/// Default cap on N for exhaustive enumeration (2^24 configurations).
inline constexpr std::uint32_t kDefaultOracleCap = 24;

/// One concrete configuration of the array, 1 = failed component.
///
/// Cells are stored row-major: the last axis varies fastest, so the 0-based
/// cell (i_1, ..., i_d) lives at ((i_1 * n_2 + i_2) * n_3 + i_3) ... and
/// bit i of a configuration number is cell i.
class BinaryArray {
 public:
  explicit BinaryArray(SystemShape shape);
  /// Cell i set iff bit i of `bits` is set; requires N <= 64.
  static BinaryArray from_bits(SystemShape shape, std::uint64_t bits);

  const SystemShape& shape() const { return shape_; }
  std::span<const std::uint8_t> cells() const { return cells_; }

  /// 0-based coordinates.
  bool get(std::span<const std::uint32_t> coords) const { return cells_[index(coords)] != 0; }
  void set(std::span<const std::uint32_t> coords, bool failed) {
    cells_[index(coords)] = failed ? 1 : 0;
  }
  bool get(std::uint64_t flat) const { return cells_[flat] != 0; }
  void set(std::uint64_t flat, bool failed) { cells_[flat] = failed ? 1 : 0; }

  std::uint64_t index(std::span<const std::uint32_t> coords) const;

 private:
  SystemShape shape_;
  std::vector<std::uint8_t> cells_;
};

/// Window test by summed-volume table: one O(N d) prefix pass, then each
/// placement is checked with 2^d corner lookups. Reusable across arrays of
/// the same shape; `Scratch` holds the per-thread prefix table.
class WindowDetector {
 public:
  using Scratch = std::vector<std::uint32_t>;

  explicit WindowDetector(const SystemShape& shape);

  Scratch make_scratch() const { return Scratch(padded_size_, 0); }

  /// True iff some placement has every cell failed. `cells` is row-major.
  bool has_failure(std::span<const std::uint8_t> cells, Scratch& scratch) const;
  /// Same, with the configuration given as bits (N <= 64).
  bool has_failure(std::uint64_t bits, Scratch& scratch) const;

 private:
  void accumulate(Scratch& scratch) const;
  bool any_full_window(const Scratch& scratch) const;

  SystemShape shape_;
  std::vector<std::uint64_t> padded_stride_;
  std::vector<std::uint64_t> cell_to_padded_;
  std::vector<std::uint64_t> window_bases_;
  std::vector<std::int64_t> corner_offsets_;
  std::vector<int> corner_signs_;
  std::uint64_t padded_size_ = 0;
};

bool has_failure_window(const BinaryArray& array);

/// f[k] = number of failed configurations with exactly k failed cells.
struct WeightTally {
  std::vector<mpz_class> f;

  mpz_class total() const;
  friend bool operator==(const WeightTally&, const WeightTally&) = default;
};

/// Classifies all 2^N configurations. Throws ResourceError when N > cap.
WeightTally brute_force_tally(const SystemShape& shape, std::uint32_t cap = kDefaultOracleCap,
                              int workers = 0);
WeightTally brute_force_tally_serial(const SystemShape& shape,
                                     std::uint32_t cap = kDefaultOracleCap);

/// P(q) = sum_k f_k q^k (1-q)^{N-k}, expanded exactly.
IntPolynomial tally_to_polynomial(const WeightTally& tally);

/// R(k, n; q) for the 1-D system by the linear recursion on the last
/// working component: R_n = 1 (n < k), R_k = 1 - q^k,
/// R_n = R_{n-1} - (1-q) q^k R_{n-k-1} (n > k).
ExactRational one_dim_recursion(std::uint32_t k, std::uint32_t n, const ExactRational& q);

/// Same quantity by a k-state chain over the current run of failed
/// components (states 0..k-1, absorbing failure dropped).
ExactRational one_dim_transfer_matrix(std::uint32_t k, std::uint32_t n, const ExactRational& q);

}  // namespace consec

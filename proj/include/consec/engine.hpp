#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "consec/polynomial.hpp"
#include "consec/shape.hpp"

namespace consec {

/// Largest |E| a 64-bit subset mask can represent with room for 2^|E|.
inline constexpr std::uint32_t kMaxMaskPlacements = 62;

/// A placement of the all-failed window: the 1-based per-axis offset of its
/// minimal corner. Covers cells e_r <= i_r <= e_r + s_r - 1 on every axis.
struct ElementaryFailure {
  std::vector<std::uint32_t> offsets;

  friend auto operator<=>(const ElementaryFailure&, const ElementaryFailure&) = default;
};

enum class FastPath { automatic, direct_mask, zeta };

struct EngineConfig {
  /// Exact computation refuses shapes with more placements than this.
  std::uint32_t max_placements = 26;
  /// Bound on |J| for the literal inner inclusion-exclusion.
  std::uint32_t max_ie_subset = 20;
  /// The zeta path transforms the low `zeta_block_bits` placement bits at a
  /// time, so its table has 2^min(|E|, zeta_block_bits) entries per worker.
  std::uint32_t zeta_block_bits = 16;
  FastPath path = FastPath::automatic;
  /// 0 means resolve_workers() default.
  int workers = 0;
};

/// All placements in lexicographic offset order. Position j in this list is
/// bit j in every subset mask. Empty for non-failable shapes.
std::vector<ElementaryFailure> enumerate_elementary_failures(const SystemShape& shape);

/// Extent along `axis` of the common intersection of the windows in `group`:
/// max(0, s_r - (max e_r - min e_r)). `group` must be nonempty.
std::uint32_t overlap_extent(const SystemShape& shape,
                             std::span<const ElementaryFailure> group, std::size_t axis);

/// Number of cells shared by every window in `group` (product of the extents).
std::uint64_t intersection_volume(const SystemShape& shape,
                                  std::span<const ElementaryFailure> group);

/// Number of cells in the union of the windows in `group`, by inclusion-exclusion
/// over its nonempty sub-groups (2^|group| intersection volumes). Throws
/// ResourceError when |group| > max_subset.
std::uint64_t union_exponent_by_ie(const SystemShape& shape,
                                   std::span<const ElementaryFailure> group,
                                   std::uint32_t max_subset = 20);

/// Per-cell bitmask over placements: bit j of cell c is set iff placement j
/// covers c. Also keeps the distinct nonzero masks with their multiplicities,
/// which is all the subset sweep needs.
class CellMaskTable {
 public:
  struct MaskCount {
    std::uint64_t mask;
    std::uint64_t multiplicity;
  };

  /// Throws ResourceError when |E| > kMaxMaskPlacements.
  explicit CellMaskTable(const SystemShape& shape);

  std::uint32_t placement_count() const { return placements_; }
  std::uint64_t full_mask() const { return full_mask_; }
  /// Mask of the cell with row-major flat index `cell`.
  std::uint64_t cell_mask(std::uint64_t cell) const { return cell_masks_[cell]; }
  std::span<const MaskCount> distinct_masks() const { return distinct_; }
  /// Cells covered by at least one placement.
  std::uint64_t covered_cells() const { return covered_; }

 private:
  std::uint32_t placements_ = 0;
  std::uint64_t full_mask_ = 0;
  std::vector<std::uint64_t> cell_masks_;
  std::vector<MaskCount> distinct_;
  std::uint64_t covered_ = 0;
};

/// Cells whose mask meets `subset` (the union exponent of that subset).
std::uint64_t union_exponent_by_cells(const CellMaskTable& table, std::uint64_t subset);

/// Which sweep `failure_polynomial` would run for this table under `config`.
FastPath select_fast_path(const CellMaskTable& table, const EngineConfig& config);

/// Failure polynomial P(q): the probability that some window is all-failed
/// when each component fails independently with probability q.
///
/// Sums (-1)^{|J|+1} q^{k(J)} over every nonempty subset J of placements,
/// where k(J) is the size of the union of J's windows. Cost is 2^|E| times
/// the per-subset exponent cost, so shapes above config.max_placements are
/// rejected with a ResourceError pointing at the Monte Carlo estimator.
IntPolynomial failure_polynomial(const SystemShape& shape, const EngineConfig& config = {});

/// Serial reference: the same sum with every k(J) computed by the literal
/// inner inclusion-exclusion. Cost 3^|E|; for testing small shapes only.
IntPolynomial failure_polynomial_reference(const SystemShape& shape,
                                           std::uint32_t max_placements = 14);

/// R(q) = 1 - P(q).
IntPolynomial reliability_polynomial(const SystemShape& shape, const EngineConfig& config = {});

/// Number of failed configurations among all 2^N, as 2^N * P(1/2).
mpz_class failed_count(const SystemShape& shape, const EngineConfig& config = {});
mpz_class failed_count(const SystemShape& shape, const IntPolynomial& failure);

/// failed_count for the shapes obtained by setting every axis in `axes`
/// (0-based) of `extents` to each value in [first, last].
std::vector<mpz_class> count_sequence(const std::vector<std::uint32_t>& extents,
                                      const std::vector<std::uint32_t>& window,
                                      std::span<const std::size_t> axes, std::uint32_t first,
                                      std::uint32_t last, const EngineConfig& config = {});

}  // namespace consec

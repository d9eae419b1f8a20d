#pragma once

// Subset-sweep kernels behind failure_polynomial. Each sweep has a serial
// version kept as the reference and an OpenMP version; for any worker count
// the two return identical counts.

#include <cstdint>
#include <span>
#include <vector>

#include "consec/engine.hpp"
#include "consec/polynomial.hpp"

namespace consec::kernels {

/// Signed term count per exponent: entry k is the sum of (-1)^{|J|+1} over
/// the nonempty subsets J whose union exponent is k.
using ExponentCounts = std::vector<std::int64_t>;

/// k(J) = sum of multiplicities of the distinct masks meeting J. O(M) per subset.
ExponentCounts sweep_direct_serial(const CellMaskTable& table);
ExponentCounts sweep_direct_parallel(const CellMaskTable& table, int workers);

/// In-place sum over subsets: afterwards f[S] = sum of the old f[T], T subset of S.
/// f.size() must be a power of two.
void subset_sum_transform(std::span<std::uint32_t> f);

/// contained[S] = number of covered cells whose mask is a subset of S, over
/// all 2^|E| sets S. Needs 4 * 2^|E| bytes.
std::vector<std::uint32_t> contained_cells(const CellMaskTable& table);

/// Zeta sweep using k(J) = covered - contained[~J], processed in blocks that
/// share the placement bits above `block_bits`. Within a block the high bits
/// H are fixed: masks meeting H always count, the rest only through their
/// low bits, and a 2^block_bits transform over those low bits gives every
/// k(H | low) in O(1). Cost O(2^|E| block_bits + 2^(|E|-block_bits) M).
ExponentCounts sweep_zeta_serial(const CellMaskTable& table, unsigned block_bits);
ExponentCounts sweep_zeta_parallel(const CellMaskTable& table, unsigned block_bits, int workers);

/// Literal formula: every k(J) by inner inclusion-exclusion. Serial, 3^|E|.
ExponentCounts sweep_inclusion_exclusion(const SystemShape& shape,
                                         std::span<const ElementaryFailure> placements);

IntPolynomial to_polynomial(const ExponentCounts& counts);

}  // namespace consec::kernels

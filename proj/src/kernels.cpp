#include "consec/kernels.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include <omp.h>

#include "consec/errors.hpp"

namespace consec::kernels {

namespace {

inline std::int64_t term_sign(std::uint64_t subset) {
  return (std::popcount(subset) & 1) ? 1 : -1;
}

ExponentCounts merge(const std::vector<ExponentCounts>& partial, std::size_t size) {
  ExponentCounts out(size, 0);
  for (const auto& p : partial)
    for (std::size_t k = 0; k < size; ++k) out[k] += p[k];
  return out;
}

// Distinct masks split into parallel arrays so the inner loop vectorizes.
struct MaskColumns {
  std::vector<std::uint64_t> mask;
  std::vector<std::uint64_t> count;

  explicit MaskColumns(const CellMaskTable& table) {
    for (const auto& [m, c] : table.distinct_masks()) {
      mask.push_back(m);
      count.push_back(c);
    }
  }

  std::uint64_t hit(std::uint64_t subset) const {
    std::uint64_t k = 0;
    const std::size_t n = mask.size();
    for (std::size_t i = 0; i < n; ++i) k += (mask[i] & subset) ? count[i] : 0;
    return k;
  }
};

// One block of the zeta sweep: all subsets (high << low_bits) | low.
void zeta_block(const MaskColumns& cols, std::uint64_t high, unsigned low_bits,
                std::vector<std::uint32_t>& table, ExponentCounts& counts) {
  const std::uint64_t high_bits = high << low_bits;
  const std::uint64_t low_full = (std::uint64_t{1} << low_bits) - 1;
  std::fill(table.begin(), table.end(), 0);
  std::uint64_t base = 0, reachable = 0;
  for (std::size_t i = 0; i < cols.mask.size(); ++i) {
    const std::uint64_t m = cols.mask[i];
    if (m & high_bits) {
      base += cols.count[i];
    } else if (m & low_full) {
      reachable += cols.count[i];
      table[m & low_full] += static_cast<std::uint32_t>(cols.count[i]);
    }
  }
  subset_sum_transform(table);
  const std::int64_t high_sign = (std::popcount(high) & 1) ? -1 : 1;
  const std::uint64_t top = base + reachable;
  for (std::uint64_t low = high == 0 ? 1 : 0; low <= low_full; ++low)
    counts[top - table[low_full ^ low]] += high_sign * term_sign(low);
}

unsigned ceil_log2(unsigned v) { return v <= 1 ? 0 : std::bit_width(v - 1); }

}  // namespace

ExponentCounts sweep_direct_serial(const CellMaskTable& table) {
  ExponentCounts counts(table.covered_cells() + 1, 0);
  const MaskColumns cols(table);
  const std::uint64_t full = table.full_mask();
  for (std::uint64_t subset = 1; subset <= full && subset != 0; ++subset)
    counts[cols.hit(subset)] += term_sign(subset);
  return counts;
}

ExponentCounts sweep_direct_parallel(const CellMaskTable& table, int workers) {
  const std::size_t size = table.covered_cells() + 1;
  const MaskColumns cols(table);
  const std::uint64_t full = table.full_mask();
  std::vector<ExponentCounts> partial(workers, ExponentCounts(size, 0));
#pragma omp parallel num_threads(workers)
  {
    auto& local = partial[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (std::uint64_t subset = 1; subset <= full; ++subset)
      local[cols.hit(subset)] += term_sign(subset);
  }
  return merge(partial, size);
}

void subset_sum_transform(std::span<std::uint32_t> f) {
  const std::size_t size = f.size();
  for (std::size_t bit = 1; bit < size; bit <<= 1)
    for (std::size_t block = 0; block < size; block += bit << 1)
      for (std::size_t i = block + bit; i < block + (bit << 1); ++i) f[i] += f[i - bit];
}

std::vector<std::uint32_t> contained_cells(const CellMaskTable& table) {
  if (table.placement_count() > 30)
    throw ResourceError("full zeta table limited to 30 placements");
  std::vector<std::uint32_t> f(std::size_t{1} << table.placement_count(), 0);
  for (const auto& [mask, count] : table.distinct_masks()) f[mask] += count;
  subset_sum_transform(f);
  return f;
}

ExponentCounts sweep_zeta_serial(const CellMaskTable& table, unsigned block_bits) {
  const unsigned e = table.placement_count();
  const unsigned low_bits = std::min(block_bits, e);
  ExponentCounts counts(table.covered_cells() + 1, 0);
  if (e == 0) return counts;
  const MaskColumns cols(table);
  std::vector<std::uint32_t> scratch(std::size_t{1} << low_bits);
  const std::uint64_t blocks = std::uint64_t{1} << (e - low_bits);
  for (std::uint64_t high = 0; high < blocks; ++high)
    zeta_block(cols, high, low_bits, scratch, counts);
  return counts;
}

ExponentCounts sweep_zeta_parallel(const CellMaskTable& table, unsigned block_bits,
                                   int workers) {
  const unsigned e = table.placement_count();
  const std::size_t size = table.covered_cells() + 1;
  if (e == 0) return ExponentCounts(size, 0);
  // Enough blocks to give every worker a few.
  const unsigned spare = ceil_log2(static_cast<unsigned>(workers) * 4);
  const unsigned low_bits = std::min(block_bits, e > spare ? e - spare : 0u);
  const MaskColumns cols(table);
  const std::uint64_t blocks = std::uint64_t{1} << (e - low_bits);
  std::vector<ExponentCounts> partial(workers, ExponentCounts(size, 0));
#pragma omp parallel num_threads(workers)
  {
    auto& local = partial[omp_get_thread_num()];
    std::vector<std::uint32_t> scratch(std::size_t{1} << low_bits);
#pragma omp for schedule(static)
    for (std::uint64_t high = 0; high < blocks; ++high)
      zeta_block(cols, high, low_bits, scratch, local);
  }
  return merge(partial, size);
}

ExponentCounts sweep_inclusion_exclusion(const SystemShape& shape,
                                         std::span<const ElementaryFailure> placements) {
  const std::uint64_t full =
      placements.empty() ? 0 : (~std::uint64_t{0} >> (64 - placements.size()));
  ExponentCounts counts(shape.volume() + 1, 0);
  std::vector<ElementaryFailure> group;
  for (std::uint64_t subset = 1; subset <= full && subset != 0; ++subset) {
    group.clear();
    for (std::uint64_t rest = subset; rest; rest &= rest - 1)
      group.push_back(placements[std::countr_zero(rest)]);
    counts[union_exponent_by_ie(shape, group, kMaxMaskPlacements)] += term_sign(subset);
  }
  return counts;
}

IntPolynomial to_polynomial(const ExponentCounts& counts) {
  IntPolynomial p;
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (counts[k] != 0) p.add_term(k, mpz_class(static_cast<signed long>(counts[k])));
  return p;
}

}  // namespace consec::kernels

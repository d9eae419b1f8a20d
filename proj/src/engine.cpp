#include "consec/engine.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "consec/errors.hpp"
#include "consec/kernels.hpp"
#include "consec/parallel.hpp"

namespace consec {

std::vector<ElementaryFailure> enumerate_elementary_failures(const SystemShape& shape) {
  std::vector<ElementaryFailure> out;
  if (!shape.failable()) return out;
  const std::size_t d = shape.dimension();
  out.reserve(shape.placement_count());
  std::vector<std::uint32_t> offset(d, 1);
  while (true) {
    out.push_back({offset});
    std::size_t r = d;
    while (r > 0) {
      --r;
      if (offset[r] < shape.positions(r)) {
        ++offset[r];
        break;
      }
      offset[r] = 1;
      if (r == 0) return out;
    }
  }
}

std::uint32_t overlap_extent(const SystemShape& shape, std::span<const ElementaryFailure> group,
                             std::size_t axis) {
  if (group.empty()) throw ShapeError("overlap of an empty group is undefined");
  auto [lo, hi] = std::minmax_element(group.begin(), group.end(), [axis](auto& a, auto& b) {
    return a.offsets[axis] < b.offsets[axis];
  });
  const std::uint32_t spread = hi->offsets[axis] - lo->offsets[axis];
  const std::uint32_t s = shape.window(axis);
  return spread >= s ? 0 : s - spread;
}

std::uint64_t intersection_volume(const SystemShape& shape,
                                  std::span<const ElementaryFailure> group) {
  std::uint64_t volume = 1;
  for (std::size_t r = 0; r < shape.dimension() && volume != 0; ++r)
    volume *= overlap_extent(shape, group, r);
  return volume;
}

std::uint64_t union_exponent_by_ie(const SystemShape& shape,
                                   std::span<const ElementaryFailure> group,
                                   std::uint32_t max_subset) {
  if (group.empty()) throw ShapeError("union exponent of an empty group is undefined");
  if (group.size() > max_subset || group.size() > kMaxMaskPlacements)
    throw ResourceError("inclusion-exclusion over " + std::to_string(group.size()) +
                        " windows exceeds the bound of " + std::to_string(max_subset));
  const std::uint64_t limit = std::uint64_t{1} << group.size();
  std::vector<ElementaryFailure> sub;
  sub.reserve(group.size());
  std::int64_t total = 0;
  for (std::uint64_t bits = 1; bits < limit; ++bits) {
    sub.clear();
    for (std::uint64_t rest = bits; rest; rest &= rest - 1)
      sub.push_back(group[std::countr_zero(rest)]);
    const auto volume = static_cast<std::int64_t>(intersection_volume(shape, sub));
    total += (sub.size() % 2 == 1) ? volume : -volume;
  }
  if (total < 0) throw InternalError("negative union volume");
  return static_cast<std::uint64_t>(total);
}

CellMaskTable::CellMaskTable(const SystemShape& shape) {
  if (shape.placement_count() > kMaxMaskPlacements)
    throw ResourceError("cell masks hold at most " + std::to_string(kMaxMaskPlacements) +
                        " placements; " + shape.describe() + " has " +
                        std::to_string(shape.placement_count()));
  placements_ = static_cast<std::uint32_t>(shape.placement_count());
  full_mask_ = placements_ == 0 ? 0 : (~std::uint64_t{0} >> (64 - placements_));
  cell_masks_.assign(shape.volume(), 0);

  const std::size_t d = shape.dimension();
  std::vector<std::uint64_t> stride(d, 1);
  for (std::size_t r = d - 1; r > 0; --r) stride[r - 1] = stride[r] * shape.extent(r);

  const auto placements = enumerate_elementary_failures(shape);
  std::vector<std::uint32_t> local(d);
  for (std::size_t j = 0; j < placements.size(); ++j) {
    const std::uint64_t bit = std::uint64_t{1} << j;
    std::uint64_t base = 0;
    for (std::size_t r = 0; r < d; ++r) base += (placements[j].offsets[r] - 1) * stride[r];
    std::fill(local.begin(), local.end(), 0);
    // Walk the window's cells with an odometer over local coordinates.
    while (true) {
      std::uint64_t cell = base;
      for (std::size_t r = 0; r < d; ++r) cell += local[r] * stride[r];
      cell_masks_[cell] |= bit;
      std::size_t r = d;
      bool done = true;
      while (r > 0) {
        --r;
        if (++local[r] < shape.window(r)) {
          done = false;
          break;
        }
        local[r] = 0;
      }
      if (done) break;
    }
  }

  std::vector<std::uint64_t> nonzero;
  for (auto m : cell_masks_)
    if (m) nonzero.push_back(m);
  covered_ = nonzero.size();
  std::sort(nonzero.begin(), nonzero.end());
  for (auto m : nonzero) {
    if (!distinct_.empty() && distinct_.back().mask == m)
      ++distinct_.back().multiplicity;
    else
      distinct_.push_back({m, 1});
  }
}

std::uint64_t union_exponent_by_cells(const CellMaskTable& table, std::uint64_t subset) {
  std::uint64_t k = 0;
  for (const auto& [mask, count] : table.distinct_masks())
    if (mask & subset) k += count;
  return k;
}

FastPath select_fast_path(const CellMaskTable& table, const EngineConfig& config) {
  if (config.path != FastPath::automatic) return config.path;
  const auto e = table.placement_count();
  if (table.distinct_masks().size() > std::min(e, config.zeta_block_bits)) return FastPath::zeta;
  return FastPath::direct_mask;
}

namespace {


}  // namespace

IntPolynomial failure_polynomial(const SystemShape& shape, const EngineConfig& config) {
  if (!shape.failable()) return {};
  const auto e = shape.placement_count();
  if (e > config.max_placements || e > kMaxMaskPlacements)
    throw ResourceError(shape.describe() + " has " + std::to_string(e) +
                        " window placements; exact computation is capped at " +
                        std::to_string(std::min<std::uint32_t>(config.max_placements,
                                                               kMaxMaskPlacements)) +
                        " (2^|E| subsets). Use the Monte Carlo estimator (`consec mc`) instead");
  const CellMaskTable table(shape);
  const int workers = resolve_workers(config.workers);
  kernels::ExponentCounts counts;
  if (select_fast_path(table, config) == FastPath::zeta) {
    const unsigned block = std::min<unsigned>(config.zeta_block_bits, table.placement_count());
    counts = workers == 1 ? kernels::sweep_zeta_serial(table, block)
                          : kernels::sweep_zeta_parallel(table, block, workers);
  } else {
    counts = workers == 1 ? kernels::sweep_direct_serial(table)
                          : kernels::sweep_direct_parallel(table, workers);
  }
  return kernels::to_polynomial(counts);
}

IntPolynomial failure_polynomial_reference(const SystemShape& shape,
                                           std::uint32_t max_placements) {
  if (!shape.failable()) return {};
  if (shape.placement_count() > max_placements)
    throw ResourceError("reference evaluation is limited to " + std::to_string(max_placements) +
                        " placements");
  const auto placements = enumerate_elementary_failures(shape);
  return kernels::to_polynomial(kernels::sweep_inclusion_exclusion(shape, placements));
}

IntPolynomial reliability_polynomial(const SystemShape& shape, const EngineConfig& config) {
  return IntPolynomial::constant(1) - failure_polynomial(shape, config);
}

mpz_class failed_count(const SystemShape& shape, const IntPolynomial& failure) {
  const auto half = evaluate(failure, ExactRational(1, 2));
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, shape.volume());
  const auto scaled = half * ExactRational(scale, 1);
  if (!scaled.is_integer())
    throw InternalError("2^N * P(1/2) is not an integer for " + shape.describe());
  return scaled.numerator();
}

mpz_class failed_count(const SystemShape& shape, const EngineConfig& config) {
  return failed_count(shape, failure_polynomial(shape, config));
}

std::vector<mpz_class> count_sequence(const std::vector<std::uint32_t>& extents,
                                      const std::vector<std::uint32_t>& window,
                                      std::span<const std::size_t> axes, std::uint32_t first,
                                      std::uint32_t last, const EngineConfig& config) {
  if (axes.empty()) throw ShapeError("no axis to vary");
  if (first < 1 || first > last) throw ShapeError("empty or invalid range");
  for (auto a : axes)
    if (a >= extents.size()) throw ShapeError("axis out of range");
  std::vector<mpz_class> out;
  auto n = extents;
  for (std::uint32_t v = first; v <= last; ++v) {
    for (auto a : axes) n[a] = v;
    out.push_back(failed_count(SystemShape(n, window), config));
  }
  return out;
}

}  // namespace consec

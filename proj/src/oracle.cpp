#include "consec/oracle.hpp"

#include <bit>
#include <string>

#include <omp.h>

#include "consec/errors.hpp"
#include "consec/parallel.hpp"

namespace consec {

BinaryArray::BinaryArray(SystemShape shape)
    : shape_(std::move(shape)), cells_(shape_.volume(), 0) {}

BinaryArray BinaryArray::from_bits(SystemShape shape, std::uint64_t bits) {
  if (shape.volume() > 64) throw ShapeError("from_bits needs N <= 64");
  BinaryArray a(std::move(shape));
  for (std::uint64_t i = 0; i < a.cells_.size(); ++i) a.cells_[i] = (bits >> i) & 1;
  return a;
}

std::uint64_t BinaryArray::index(std::span<const std::uint32_t> coords) const {
  if (coords.size() != shape_.dimension()) throw ShapeError("coordinate has wrong dimension");
  std::uint64_t flat = 0;
  for (std::size_t r = 0; r < coords.size(); ++r) {
    if (coords[r] >= shape_.extent(r)) throw ShapeError("coordinate out of range");
    flat = flat * shape_.extent(r) + coords[r];
  }
  return flat;
}

WindowDetector::WindowDetector(const SystemShape& shape) : shape_(shape) {
  const std::size_t d = shape.dimension();
  padded_stride_.assign(d, 1);
  for (std::size_t r = d - 1; r > 0; --r)
    padded_stride_[r - 1] = padded_stride_[r] * (shape.extent(r) + 1);
  padded_size_ = padded_stride_[0] * (shape.extent(0) + 1);

  // Cell (i_1..i_d) sits at padded (i_1+1..i_d+1); row 0 of every axis stays 0.
  cell_to_padded_.resize(shape.volume());
  std::vector<std::uint32_t> coord(d, 0);
  for (std::uint64_t cell = 0; cell < shape.volume(); ++cell) {
    std::uint64_t p = 0;
    for (std::size_t r = 0; r < d; ++r) p += (coord[r] + 1) * padded_stride_[r];
    cell_to_padded_[cell] = p;
    for (std::size_t r = d; r > 0; --r) {
      if (++coord[r - 1] < shape.extent(r - 1)) break;
      coord[r - 1] = 0;
    }
  }

  if (!shape.failable()) return;
  std::vector<std::uint32_t> start(d, 0);
  while (true) {
    std::uint64_t base = 0;
    for (std::size_t r = 0; r < d; ++r) base += start[r] * padded_stride_[r];
    window_bases_.push_back(base);
    std::size_t r = d;
    for (; r > 0; --r) {
      if (++start[r - 1] < shape.positions(r - 1)) break;
      start[r - 1] = 0;
    }
    if (r == 0) break;
  }

  const std::uint64_t corners = std::uint64_t{1} << d;
  for (std::uint64_t c = 0; c < corners; ++c) {
    std::int64_t offset = 0;
    for (std::size_t r = 0; r < d; ++r)
      if (c & (std::uint64_t{1} << r))
        offset += static_cast<std::int64_t>(shape.window(r) * padded_stride_[r]);
    corner_offsets_.push_back(offset);
    corner_signs_.push_back(((d - std::popcount(c)) % 2 == 0) ? 1 : -1);
  }
}

void WindowDetector::accumulate(Scratch& p) const {
  const std::size_t d = shape_.dimension();
  for (std::size_t r = 0; r < d; ++r) {
    const std::uint64_t stride = padded_stride_[r];
    const std::uint64_t span = stride * (shape_.extent(r) + 1);
    for (std::uint64_t block = 0; block < padded_size_; block += span)
      for (std::uint64_t j = 1; j <= shape_.extent(r); ++j) {
        const std::uint64_t row = block + j * stride;
        for (std::uint64_t t = 0; t < stride; ++t) p[row + t] += p[row + t - stride];
      }
  }
}

bool WindowDetector::any_full_window(const Scratch& p) const {
  const auto target = static_cast<std::int64_t>(shape_.window_volume());
  for (auto base : window_bases_) {
    std::int64_t sum = 0;
    for (std::size_t c = 0; c < corner_offsets_.size(); ++c)
      sum += corner_signs_[c] * static_cast<std::int64_t>(p[base + corner_offsets_[c]]);
    if (sum == target) return true;
  }
  return false;
}

bool WindowDetector::has_failure(std::span<const std::uint8_t> cells, Scratch& scratch) const {
  if (window_bases_.empty()) return false;
  scratch.assign(padded_size_, 0);
  for (std::uint64_t i = 0; i < cells.size(); ++i) scratch[cell_to_padded_[i]] = cells[i] ? 1 : 0;
  accumulate(scratch);
  return any_full_window(scratch);
}

bool WindowDetector::has_failure(std::uint64_t bits, Scratch& scratch) const {
  if (window_bases_.empty()) return false;
  scratch.assign(padded_size_, 0);
  for (std::uint64_t i = 0; i < cell_to_padded_.size(); ++i)
    scratch[cell_to_padded_[i]] = static_cast<std::uint32_t>((bits >> i) & 1);
  accumulate(scratch);
  return any_full_window(scratch);
}

bool has_failure_window(const BinaryArray& array) {
  WindowDetector detector(array.shape());
  auto scratch = detector.make_scratch();
  return detector.has_failure(array.cells(), scratch);
}

mpz_class WeightTally::total() const {
  mpz_class sum = 0;
  for (const auto& v : f) sum += v;
  return sum;
}

namespace {

void check_oracle_cap(const SystemShape& shape, std::uint32_t cap) {
  if (shape.volume() > cap || shape.volume() > 62)
    throw ResourceError("exhaustive enumeration of " + shape.describe() + " needs 2^" +
                        std::to_string(shape.volume()) + " configurations; the oracle cap is N <= " +
                        std::to_string(cap));
}

WeightTally to_tally(const std::vector<std::uint64_t>& counts) {
  WeightTally t;
  t.f.reserve(counts.size());
  for (auto c : counts) t.f.emplace_back(static_cast<unsigned long>(c));
  return t;
}

}  // namespace

WeightTally brute_force_tally_serial(const SystemShape& shape, std::uint32_t cap) {
  check_oracle_cap(shape, cap);
  std::vector<std::uint64_t> counts(shape.volume() + 1, 0);
  if (shape.failable()) {
    const WindowDetector detector(shape);
    auto scratch = detector.make_scratch();
    const std::uint64_t configs = std::uint64_t{1} << shape.volume();
    for (std::uint64_t bits = 0; bits < configs; ++bits)
      if (detector.has_failure(bits, scratch)) ++counts[std::popcount(bits)];
  }
  return to_tally(counts);
}

WeightTally brute_force_tally(const SystemShape& shape, std::uint32_t cap, int workers) {
  check_oracle_cap(shape, cap);
  const std::size_t size = shape.volume() + 1;
  const int threads = resolve_workers(workers);
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(size, 0));
  if (shape.failable()) {
    const WindowDetector detector(shape);
    const std::uint64_t configs = std::uint64_t{1} << shape.volume();
#pragma omp parallel num_threads(threads)
    {
      auto& local = partial[omp_get_thread_num()];
      auto scratch = detector.make_scratch();
#pragma omp for schedule(static)
      for (std::uint64_t bits = 0; bits < configs; ++bits)
        if (detector.has_failure(bits, scratch)) ++local[std::popcount(bits)];
    }
  }
  std::vector<std::uint64_t> counts(size, 0);
  for (const auto& p : partial)
    for (std::size_t k = 0; k < size; ++k) counts[k] += p[k];
  return to_tally(counts);
}

IntPolynomial tally_to_polynomial(const WeightTally& tally) {
  IntPolynomial p;
  if (tally.f.empty()) return p;
  const std::uint64_t n = tally.f.size() - 1;
  mpz_class binom;
  for (std::uint64_t k = 0; k <= n; ++k) {
    if (tally.f[k] == 0) continue;
    // f_k q^k (1-q)^{n-k} = f_k sum_j C(n-k, j) (-1)^j q^{k+j}
    for (std::uint64_t j = 0; j <= n - k; ++j) {
      mpz_bin_uiui(binom.get_mpz_t(), n - k, j);
      mpz_class term = tally.f[k] * binom;
      if (j % 2 == 1) term = -term;
      p.add_term(k + j, term);
    }
  }
  return p;
}

ExactRational one_dim_recursion(std::uint32_t k, std::uint32_t n, const ExactRational& q) {
  if (k < 1) throw ShapeError("run length must be at least 1");
  if (n < k) return ExactRational(1);
  mpq_class qk = 1;
  for (std::uint32_t i = 0; i < k; ++i) qk *= q.value();
  const mpq_class step = (1 - q.value()) * qk;
  std::vector<mpq_class> r(n + 1, mpq_class(1));
  r[k] = 1 - qk;
  for (std::uint32_t i = k + 1; i <= n; ++i) r[i] = r[i - 1] - step * r[i - k - 1];
  return ExactRational(r[n]);
}

ExactRational one_dim_transfer_matrix(std::uint32_t k, std::uint32_t n, const ExactRational& q) {
  if (k < 1) throw ShapeError("run length must be at least 1");
  const mpq_class& fail = q.value();
  const mpq_class work = 1 - fail;
  // state j: system alive, trailing run of j failed components
  std::vector<mpq_class> state(k, mpq_class(0)), next(k);
  state[0] = 1;
  for (std::uint32_t step = 0; step < n; ++step) {
    mpq_class alive = 0;
    for (const auto& v : state) alive += v;
    next[0] = work * alive;
    for (std::uint32_t j = 1; j < k; ++j) next[j] = fail * state[j - 1];
    state.swap(next);
  }
  mpq_class total = 0;
  for (const auto& v : state) total += v;
  return ExactRational(total);
}

}  // namespace consec

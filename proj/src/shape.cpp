#include "consec/shape.hpp"

#include <limits>

#include "consec/errors.hpp"

namespace consec {

namespace {

std::string join(const std::vector<std::uint32_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + "]";
}

// Product with saturation at UINT64_MAX.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace

SystemShape::SystemShape(std::vector<std::uint32_t> n, std::vector<std::uint32_t> s,
                         std::uint64_t volume_cap)
    : n_(std::move(n)), s_(std::move(s)), volume_cap_(volume_cap) {
  if (n_.empty()) throw ShapeError("dimension must be at least 1");
  if (n_.size() != s_.size())
    throw ShapeError("extent and window vectors differ in length (" + std::to_string(n_.size()) +
                     " vs " + std::to_string(s_.size()) + ")");
  volume_ = 1;
  window_volume_ = 1;
  placements_ = 1;
  for (std::size_t r = 0; r < n_.size(); ++r) {
    if (n_[r] < 1) throw ShapeError("array extents must be positive");
    if (s_[r] < 1) throw ShapeError("window extents must be positive");
    volume_ = saturating_mul(volume_, n_[r]);
    window_volume_ = saturating_mul(window_volume_, s_[r]);
    placements_ = saturating_mul(placements_, positions(r));
  }
  if (volume_ > volume_cap_)
    throw ResourceError("array volume of " + describe() + " exceeds the cap of " +
                        std::to_string(volume_cap_) + " cells");
}

SystemShape SystemShape::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != n_.size()) throw ShapeError("permutation has wrong length");
  std::vector<std::uint32_t> n(n_.size()), s(s_.size());
  std::vector<bool> seen(n_.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= n_.size() || seen[perm[i]]) throw ShapeError("not a permutation");
    seen[perm[i]] = true;
    n[i] = n_[perm[i]];
    s[i] = s_[perm[i]];
  }
  return SystemShape(std::move(n), std::move(s), volume_cap_);
}

std::string SystemShape::describe() const { return "n=" + join(n_) + " s=" + join(s_); }

SystemShape validate_shape(std::int64_t d, std::span<const std::int64_t> n,
                           std::span<const std::int64_t> s, std::uint64_t volume_cap) {
  if (d < 1) throw ShapeError("dimension must be at least 1");
  if (n.size() != static_cast<std::size_t>(d) || s.size() != static_cast<std::size_t>(d))
    throw ShapeError("expected " + std::to_string(d) + " extents and window sizes, got " +
                     std::to_string(n.size()) + " and " + std::to_string(s.size()));
  std::vector<std::uint32_t> nn, ss;
  for (std::size_t r = 0; r < n.size(); ++r) {
    if (n[r] < 1 || s[r] < 1) throw ShapeError("extents and window sizes must be positive");
    if (n[r] > std::numeric_limits<std::uint32_t>::max() ||
        s[r] > std::numeric_limits<std::uint32_t>::max())
      throw ResourceError("extent too large");
    nn.push_back(static_cast<std::uint32_t>(n[r]));
    ss.push_back(static_cast<std::uint32_t>(s[r]));
  }
  return SystemShape(std::move(nn), std::move(ss), volume_cap);
}

}  // namespace consec

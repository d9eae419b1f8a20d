#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace consec {

/// Default cap on the array volume N = n_1 * ... * n_d.
inline constexpr std::uint64_t kDefaultVolumeCap = std::uint64_t{1} << 20;

/// An n_1 x ... x n_d array of components that fails when it contains a
/// contiguous s_1 x ... x s_d block of failed components.
///
/// Shapes with some s_r > n_r are valid but non-failable: there is no place
/// to put a window, so the reliability is identically 1.
class SystemShape {
 public:
  SystemShape(std::vector<std::uint32_t> n, std::vector<std::uint32_t> s,
              std::uint64_t volume_cap = kDefaultVolumeCap);

  std::size_t dimension() const { return n_.size(); }
  const std::vector<std::uint32_t>& extents() const { return n_; }
  const std::vector<std::uint32_t>& window() const { return s_; }
  std::uint32_t extent(std::size_t axis) const { return n_[axis]; }
  std::uint32_t window(std::size_t axis) const { return s_[axis]; }

  /// N, the number of components.
  std::uint64_t volume() const { return volume_; }
  /// Product of the window extents.
  std::uint64_t window_volume() const { return window_volume_; }
  /// |E|, the number of window placements (0 when non-failable).
  std::uint64_t placement_count() const { return placements_; }
  /// Number of window positions along one axis, max(0, n_r - s_r + 1).
  std::uint32_t positions(std::size_t axis) const {
    return n_[axis] >= s_[axis] ? n_[axis] - s_[axis] + 1 : 0;
  }
  bool failable() const { return placements_ > 0; }

  /// Same instance with axes reordered: new axis i is old axis perm[i].
  SystemShape permuted(std::span<const std::size_t> perm) const;

  /// Human-readable "n=[2,3] s=[1,2]".
  std::string describe() const;

  friend bool operator==(const SystemShape& a, const SystemShape& b) {
    return a.n_ == b.n_ && a.s_ == b.s_;
  }

 private:
  std::vector<std::uint32_t> n_;
  std::vector<std::uint32_t> s_;
  std::uint64_t volume_ = 0;
  std::uint64_t window_volume_ = 0;
  std::uint64_t placements_ = 0;
  std::uint64_t volume_cap_ = kDefaultVolumeCap;
};

/// Checks raw caller input and builds a shape. Throws ShapeError for d < 1,
/// non-positive extents or mismatched lengths and ResourceError when N
/// exceeds `volume_cap`.
SystemShape validate_shape(std::int64_t d, std::span<const std::int64_t> n,
                           std::span<const std::int64_t> s,
                           std::uint64_t volume_cap = kDefaultVolumeCap);

}  // namespace consec

#pragma once

// Test-only helpers that deliberately avoid the library's own algorithms.

#include <cstdint>
#include <set>
#include <vector>

#include "consec/engine.hpp"
#include "consec/oracle.hpp"
#include "consec/shape.hpp"

namespace consec::testing {

/// Every failable shape with dimension <= max_d and volume <= max_volume.
inline std::vector<SystemShape> failable_catalog(std::size_t max_d, std::uint64_t max_volume) {
  std::vector<SystemShape> out;
  std::vector<std::vector<std::uint32_t>> extents;
  // all extent tuples with product <= max_volume, by dimension
  std::vector<std::vector<std::uint32_t>> frontier{{}};
  for (std::size_t d = 1; d <= max_d; ++d) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& prefix : frontier) {
      std::uint64_t vol = 1;
      for (auto v : prefix) vol *= v;
      for (std::uint32_t n = 1; vol * n <= max_volume; ++n) {
        auto t = prefix;
        t.push_back(n);
        next.push_back(t);
      }
    }
    extents.insert(extents.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  for (const auto& n : extents) {
    std::vector<std::uint32_t> s(n.size(), 1);
    while (true) {
      out.emplace_back(n, s);
      std::size_t r = s.size();
      for (; r > 0; --r) {
        if (++s[r - 1] <= n[r - 1]) break;
        s[r - 1] = 1;
      }
      if (r == 0) break;
    }
  }
  return out;
}

/// Flat row-major indices of the cells covered by placement `e` (1-based offsets).
inline std::vector<std::uint64_t> window_cells(const SystemShape& shape,
                                               const ElementaryFailure& e) {
  std::vector<std::uint64_t> cells;
  const std::size_t d = shape.dimension();
  std::vector<std::uint32_t> local(d, 0);
  while (true) {
    std::uint64_t flat = 0;
    for (std::size_t r = 0; r < d; ++r) flat = flat * shape.extent(r) + (e.offsets[r] - 1 + local[r]);
    cells.push_back(flat);
    std::size_t r = d;
    for (; r > 0; --r) {
      if (++local[r - 1] < shape.window(r - 1)) break;
      local[r - 1] = 0;
    }
    if (r == 0) return cells;
  }
}

/// Union size by listing cells.
inline std::uint64_t union_by_listing(const SystemShape& shape,
                                      const std::vector<ElementaryFailure>& group) {
  std::set<std::uint64_t> cells;
  for (const auto& e : group)
    for (auto c : window_cells(shape, e)) cells.insert(c);
  return cells.size();
}

/// Intersection size by listing cells.
inline std::uint64_t intersection_by_listing(const SystemShape& shape,
                                             const std::vector<ElementaryFailure>& group) {
  std::set<std::uint64_t> common;
  bool first = true;
  for (const auto& e : group) {
    auto cells = window_cells(shape, e);
    std::set<std::uint64_t> here(cells.begin(), cells.end());
    if (first) {
      common = here;
      first = false;
    } else {
      std::set<std::uint64_t> keep;
      for (auto c : common)
        if (here.count(c)) keep.insert(c);
      common = keep;
    }
  }
  return common.size();
}

/// Naive detector: checks every cell of every placement.
inline bool naive_has_failure(const BinaryArray& a) {
  for (const auto& e : enumerate_elementary_failures(a.shape())) {
    bool full = true;
    for (auto c : window_cells(a.shape(), e))
      if (!a.get(c)) {
        full = false;
        break;
      }
    if (full) return true;
  }
  return false;
}

}  // namespace consec::testing

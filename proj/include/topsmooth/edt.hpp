#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "grid.hpp"
#include "sched.hpp"

namespace topsmooth {

using Distance = std::uint32_t;

namespace detail {

inline Distance infinity_for(std::size_t height, std::size_t width) {
  const std::uint64_t inf = static_cast<std::uint64_t>(height) * height +
                            static_cast<std::uint64_t>(width) * width + 1;
  if (inf > std::numeric_limits<Distance>::max()) {
    throw std::invalid_argument("image too large for 32-bit squared distances");
  }
  return static_cast<Distance>(inf);
}

// Dense n x m grid of distances with an image-specific INF sentinel.
class DistanceGrid {
 public:
  DistanceGrid() = default;
  DistanceGrid(std::size_t height, std::size_t width)
      : height_(height), width_(width), inf_(infinity_for(height, width)), values_(height * width, inf_) {}

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return values_.size(); }
  // Strictly greater than (n-1)^2 + (m-1)^2.
  Distance inf() const noexcept { return inf_; }

  Distance operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * width_ + c]; }
  Distance& operator()(std::size_t r, std::size_t c) noexcept { return values_[r * width_ + c]; }
  Distance operator[](std::size_t i) const noexcept { return values_[i]; }
  Distance& operator[](std::size_t i) noexcept { return values_[i]; }

  bool is_inf(std::size_t r, std::size_t c) const noexcept { return (*this)(r, c) == inf_; }

  std::span<const Distance> values() const noexcept { return values_; }
  std::span<Distance> values() noexcept { return values_; }

  friend bool operator==(const DistanceGrid&, const DistanceGrid&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  Distance inf_ = 0;
  std::vector<Distance> values_;
};

}  // namespace detail

// Per-pixel squared Euclidean distance to the nearest object pixel; inf() when
// the image has no object pixel.
class DistanceMap : public detail::DistanceGrid {
 public:
  using DistanceGrid::DistanceGrid;
};

// G(r, c): vertical distance from (r, c) to the nearest object pixel of column
// c, inf() for empty columns.
class ColumnDistanceGrid : public detail::DistanceGrid {
 public:
  using DistanceGrid::DistanceGrid;
};

namespace detail {

inline void phase1_columns(const BinaryImage& img, ColumnDistanceGrid& g, std::size_t c0, std::size_t c1) {
  const std::size_t n = img.height();
  const Distance inf = g.inf();
  // Top-down: 0 on object pixels, otherwise one more than the pixel above.
  for (std::size_t c = c0; c < c1; ++c) g(0, c) = img(0, c) ? 0 : inf;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t c = c0; c < c1; ++c) {
      if (img(r, c)) {
        g(r, c) = 0;
      } else {
        const Distance above = g(r - 1, c);
        g(r, c) = above == inf ? inf : above + 1;
      }
    }
  }
  // Bottom-up relaxation.
  for (std::size_t r = n - 1; r-- > 0;) {
    for (std::size_t c = c0; c < c1; ++c) {
      const Distance below = g(r + 1, c);
      if (below != inf && below + 1 < g(r, c)) g(r, c) = below + 1;
    }
  }
}

// Visits a bucket as runs of consecutive indices.
template <typename F>
void for_each_run(std::span<const std::size_t> bucket, F&& f) {
  std::size_t i = 0;
  while (i < bucket.size()) {
    std::size_t j = i + 1;
    while (j < bucket.size() && bucket[j] == bucket[j - 1] + 1) ++j;
    f(bucket[i], bucket[j - 1] + 1);
    i = j;
  }
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t sep_unchecked(std::int64_t i, std::int64_t u, std::int64_t gi, std::int64_t gu) noexcept {
  return floor_div(u * u - i * i + gu * gu - gi * gi, 2 * (u - i));
}

// Lower envelope of the parabolas f(x, y) = (x - y)^2 + G(row, y)^2 for one
// row, then the right-to-left read-out. s and t are scratch of width m.
inline void phase2_row(const ColumnDistanceGrid& g, DistanceMap& out, std::size_t row, std::vector<std::int64_t>& s,
                       std::vector<std::int64_t>& t) {
  const auto m = static_cast<std::int64_t>(g.width());
  const Distance inf = g.inf();
  auto gv = [&](std::int64_t y) -> std::int64_t { return g(row, static_cast<std::size_t>(y)); };
  auto f = [&](std::int64_t x, std::int64_t y) -> std::int64_t {
    const std::int64_t gy = gv(y);
    return (x - y) * (x - y) + gy * gy;
  };

  std::int64_t q = -1;
  for (std::int64_t u = 0; u < m; ++u) {
    if (gv(u) == inf) continue;
    while (q >= 0 && f(t[q], s[q]) > f(t[q], u)) --q;
    if (q < 0) {
      q = 0;
      s[0] = u;
      t[0] = 0;
    } else {
      const std::int64_t w = 1 + sep_unchecked(s[q], u, gv(s[q]), gv(u));
      if (w < m) {
        ++q;
        s[q] = u;
        t[q] = w;
      }
    }
  }

  if (q < 0) {
    for (std::int64_t u = 0; u < m; ++u) out(row, static_cast<std::size_t>(u)) = inf;
    return;
  }
  for (std::int64_t u = m - 1; u >= 0; --u) {
    out(row, static_cast<std::size_t>(u)) = static_cast<Distance>(f(u, s[q]));
    if (u == t[q]) --q;
  }
}

// Column tiles of this many columns keep each worker's phase-1 writes on its
// own cache lines.
inline constexpr std::size_t kColumnTile = 16;

}  // namespace detail

// Largest column coordinate at which the parabola of column i is still no
// higher than that of column u (i < u, finite heights).
inline std::int64_t sep(std::int64_t i, std::int64_t u, std::int64_t g_i, std::int64_t g_u,
                        std::int64_t inf = std::numeric_limits<std::int64_t>::max()) {
  if (i >= u) throw std::invalid_argument("sep requires i < u");
  if (g_i < 0 || g_u < 0 || g_i >= inf || g_u >= inf) {
    throw std::invalid_argument("sep requires finite non-negative column distances");
  }
  return detail::sep_unchecked(i, u, g_i, g_u);
}

// Column pass. Columns are independent; any valid assignment gives the same
// grid. With an executor the buckets run in parallel.
inline ColumnDistanceGrid edt_phase1_columns(const BinaryImage& img, const TaskAssignment& assignment,
                                             Executor& exec) {
  assignment.validate(img.width());
  ColumnDistanceGrid g(img.height(), img.width());
  // Buckets are processed as runs of adjacent columns so that each row of a
  // run is a contiguous stretch of memory.
  exec.run(strided_partition(assignment.workers(), exec.workers()), [&](std::size_t b) {
    detail::for_each_run(assignment.buckets[b],
                         [&](std::size_t c0, std::size_t c1) { detail::phase1_columns(img, g, c0, c1); });
  });
  return g;
}

inline ColumnDistanceGrid edt_phase1_columns(const BinaryImage& img, const TaskAssignment& assignment) {
  Executor sequential(1);
  return edt_phase1_columns(img, assignment, sequential);
}

// Row pass; each row owns private s/t stacks and writes only its own row.
inline DistanceMap edt_phase2_rows(const ColumnDistanceGrid& g, const TaskAssignment& assignment, Executor& exec) {
  assignment.validate(g.height());
  DistanceMap out(g.height(), g.width());
  exec.run(strided_partition(assignment.workers(), exec.workers()), [&](std::size_t b) {
    std::vector<std::int64_t> s(g.width());
    std::vector<std::int64_t> t(g.width());
    for (std::size_t row : assignment.buckets[b]) detail::phase2_row(g, out, row, s, t);
  });
  return out;
}

inline DistanceMap edt_phase2_rows(const ColumnDistanceGrid& g, const TaskAssignment& assignment) {
  Executor sequential(1);
  return edt_phase2_rows(g, assignment, sequential);
}

// Exact squared EDT: column pass, barrier, row pass.
inline DistanceMap edt_squared(const BinaryImage& img, Executor& exec) {
  const std::size_t tiles = (img.width() + detail::kColumnTile - 1) / detail::kColumnTile;
  const TaskAssignment columns = expand_tiles(exec.assign(tiles), detail::kColumnTile, img.width());
  const ColumnDistanceGrid g = edt_phase1_columns(img, columns, exec);
  return edt_phase2_rows(g, exec.assign(img.height()), exec);
}

inline DistanceMap edt_squared(const BinaryImage& img, std::size_t workers = 1,
                               Scheduler scheduler = Scheduler::nps) {
  Executor exec(workers, scheduler);
  return edt_squared(img, exec);
}

// Direct minimisation over every object pixel; O((nm)^2).
inline DistanceMap edt_bruteforce(const BinaryImage& img) {
  DistanceMap out(img.height(), img.width());
  std::vector<Point> objects;
  for (std::size_t r = 0; r < img.height(); ++r) {
    for (std::size_t c = 0; c < img.width(); ++c) {
      if (img(r, c)) objects.push_back({static_cast<int>(r), static_cast<int>(c)});
    }
  }
  for (std::size_t r = 0; r < img.height(); ++r) {
    for (std::size_t c = 0; c < img.width(); ++c) {
      std::int64_t best = out.inf();
      for (const Point b : objects) {
        const std::int64_t dr = static_cast<std::int64_t>(r) - b.row;
        const std::int64_t dc = static_cast<std::int64_t>(c) - b.col;
        best = std::min(best, dr * dr + dc * dc);
      }
      out(r, c) = static_cast<Distance>(best);
    }
  }
  return out;
}

// Squared distance from each pixel to the set img, where the plane outside
// the window belongs to the set when `outside` is object.
inline DistanceMap distance_to_set(const BinaryImage& img, Outside outside, Executor& exec) {
  DistanceMap d = edt_squared(img, exec);
  if (outside == Outside::background) return d;
  const std::size_t n = img.height();
  const std::size_t m = img.width();
  exec.for_each(n, [&](std::size_t r) {
    const std::size_t dr = std::min(r + 1, n - r);
    for (std::size_t c = 0; c < m; ++c) {
      const std::size_t edge = std::min({dr, c + 1, m - c});
      d(r, c) = std::min<Distance>(d(r, c), static_cast<Distance>(edge * edge));
    }
  });
  return d;
}

}  // namespace topsmooth

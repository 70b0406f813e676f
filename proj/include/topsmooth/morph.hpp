#pragma once

#include <cstddef>
#include <cstdint>

#include "edt.hpp"
#include "grid.hpp"
#include "sched.hpp"

namespace topsmooth {

// Radius of the Euclidean disc B_r = {y : d(x, y) <= r}. B_0 is a single point.
struct BallRadius {
  unsigned value = 0;

  constexpr std::uint64_t squared() const noexcept { return std::uint64_t{value} * value; }
};

// {p : dist(p) <= r^2}, where dist is the squared distance to the set.
inline BinaryImage dilate_from(const DistanceMap& dist_to_set, BallRadius r, Executor& exec) {
  BinaryImage out(dist_to_set.height(), dist_to_set.width());
  const std::uint64_t r2 = r.squared();
  exec.for_each(out.height(), [&](std::size_t row) {
    auto dst = out.row(row);
    for (std::size_t c = 0; c < dst.size(); ++c) dst[c] = dist_to_set(row, c) <= r2 ? 1 : 0;
  });
  return out;
}

// {p : dist(p) > r^2}, where dist is the squared distance to the complement.
inline BinaryImage erode_from(const DistanceMap& dist_to_complement, BallRadius r, Executor& exec) {
  BinaryImage out(dist_to_complement.height(), dist_to_complement.width());
  const std::uint64_t r2 = r.squared();
  exec.for_each(out.height(), [&](std::size_t row) {
    auto dst = out.row(row);
    for (std::size_t c = 0; c < dst.size(); ++c) dst[c] = dist_to_complement(row, c) > r2 ? 1 : 0;
  });
  return out;
}

// Union of B_r(x) over x in img, restricted to the window. With
// Outside::object the plane beyond the window is part of the set and spreads
// inwards.
inline BinaryImage dilate(const BinaryImage& img, BallRadius r, Executor& exec,
                          Outside outside = Outside::background) {
  if (r.value == 0) return img;
  return dilate_from(distance_to_set(img, outside, exec), r, exec);
}

// Dual of dilate in Z^2: a pixel survives when its whole ball lies in the set.
// With the default convention the outside is background, so objects touching
// the border erode from there.
inline BinaryImage erode(const BinaryImage& img, BallRadius r, Executor& exec,
                         Outside outside = Outside::background) {
  if (r.value == 0) return img;
  return erode_from(distance_to_set(complement(img), flip(outside), exec), r, exec);
}

inline BinaryImage dilate(const BinaryImage& img, BallRadius r, std::size_t workers = 1,
                          Scheduler scheduler = Scheduler::nps) {
  Executor exec(workers, scheduler);
  return dilate(img, r, exec);
}

inline BinaryImage erode(const BinaryImage& img, BallRadius r, std::size_t workers = 1,
                         Scheduler scheduler = Scheduler::nps) {
  Executor exec(workers, scheduler);
  return erode(img, r, exec);
}

}  // namespace topsmooth

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

#include "grid.hpp"

namespace topsmooth {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform,
// unlike the std distributions.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline BinaryImage random_image(std::size_t height, std::size_t width, double density, std::mt19937_64& rng) {
  BinaryImage img(height, width);
  for (auto& v : img.pixels()) v = unit_uniform(rng) < density ? 1 : 0;
  return img;
}

// Disc of radius 0.35 * min(height, width) with a ragged boundary (per-pixel
// radial jitter of +-`jitter`) and salt-and-pepper specks of probability
// `speckle`.
inline BinaryImage noisy_disc(std::size_t height, std::size_t width, std::uint64_t seed, double jitter = 3.0,
                              double speckle = 0.002) {
  std::mt19937_64 rng(seed);
  BinaryImage img(height, width);
  const double cy = (static_cast<double>(height) - 1.0) / 2.0;
  const double cx = (static_cast<double>(width) - 1.0) / 2.0;
  const double radius = 0.35 * static_cast<double>(std::min(height, width));
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const double d = std::hypot(static_cast<double>(r) - cy, static_cast<double>(c) - cx);
      const double j = (2.0 * unit_uniform(rng) - 1.0) * jitter;
      bool v = d <= radius + j;
      if (unit_uniform(rng) < speckle) v = !v;
      img.set(r, c, v);
    }
  }
  return img;
}

}  // namespace topsmooth

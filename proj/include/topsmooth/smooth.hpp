#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "edt.hpp"
#include "grid.hpp"
#include "morph.hpp"
#include "sched.hpp"
#include "topo.hpp"

namespace topsmooth {

struct SmoothingConfig {
  unsigned r_max = 5;
  std::optional<BinaryImage> keep;   // C, must lie inside X
  std::optional<BinaryImage> avoid;  // D, must lie outside X
  AdjacencyPair adj = AdjacencyPair::eight_four();
  std::size_t workers = 1;
  Scheduler scheduler = Scheduler::nps;
};

namespace detail {

// Thin X down to its eroded core (plus C), then thicken back inside
// dilate(Y) ∩ X. Priorities are recomputed from the image being processed.
inline BinaryImage cutting(const BinaryImage& X, const BinaryImage& C, BallRadius r, AdjacencyPair adj,
                           Executor& exec, Outside outside) {
  const DistanceMap to_background = distance_to_set(complement(X), flip(outside), exec);
  const BinaryImage core = set_union(erode_from(to_background, r, exec), C);
  ThinningOptions opts;
  opts.outside = outside;
  const BinaryImage Y = homotopic_thin(X, core, to_background, adj, exec, opts);

  const DistanceMap to_y = distance_to_set(Y, outside, exec);
  const BinaryImage V = set_intersection(dilate_from(to_y, r, exec), X);
  return homotopic_thicken(Y, V, to_y, adj, exec, outside);
}

// Thicken X inside dilate(X) \ D, then thin back down to erode(Z) ∪ X.
inline BinaryImage filling(const BinaryImage& X, const BinaryImage& D, BallRadius r, AdjacencyPair adj,
                           Executor& exec, Outside outside) {
  const DistanceMap to_x = distance_to_set(X, outside, exec);
  const BinaryImage allowed = set_intersection(dilate_from(to_x, r, exec), complement(D));
  const BinaryImage Z = homotopic_thicken(X, allowed, to_x, adj, exec, outside);

  const DistanceMap to_background = distance_to_set(complement(Z), flip(outside), exec);
  const BinaryImage W = set_union(erode_from(to_background, r, exec), X);
  ThinningOptions opts;
  opts.outside = outside;
  return homotopic_thin(Z, W, to_background, adj, exec, opts);
}

inline void check_keep(const BinaryImage& X, const BinaryImage& C) {
  require_same_shape(X, C, "constraint C");
  if (!is_subset(C, X)) throw std::invalid_argument("constraint C is not contained in X");
}

inline void check_avoid(const BinaryImage& X, const BinaryImage& D) {
  require_same_shape(X, D, "constraint D");
  if (!are_disjoint(D, X)) throw std::invalid_argument("constraint D intersects X");
}

}  // namespace detail

inline BinaryImage homotopic_cutting(const BinaryImage& X, const BinaryImage& C, BallRadius r, AdjacencyPair adj,
                                     Executor& exec) {
  detail::check_keep(X, C);
  return detail::cutting(X, C, r, adj, exec, Outside::background);
}

inline BinaryImage homotopic_cutting(const BinaryImage& X, const BinaryImage& C, BallRadius r,
                                     const SmoothingConfig& cfg) {
  Executor exec(cfg.workers, cfg.scheduler);
  return homotopic_cutting(X, C, r, cfg.adj, exec);
}

inline BinaryImage homotopic_filling(const BinaryImage& X, const BinaryImage& D, BallRadius r, AdjacencyPair adj,
                                     Executor& exec) {
  detail::check_avoid(X, D);
  return detail::filling(X, D, r, adj, exec, Outside::background);
}

inline BinaryImage homotopic_filling(const BinaryImage& X, const BinaryImage& D, BallRadius r,
                                     const SmoothingConfig& cfg) {
  Executor exec(cfg.workers, cfg.scheduler);
  return homotopic_filling(X, D, r, cfg.adj, exec);
}

// Homotopic alternating sequential filter: cutting then filling at radius
// 1, 2, ..., r_max. Constraints are checked against the input only.
inline BinaryImage hasf(const BinaryImage& X, const SmoothingConfig& cfg, Executor& exec) {
  const BinaryImage C = cfg.keep ? *cfg.keep : BinaryImage(X.height(), X.width());
  const BinaryImage D = cfg.avoid ? *cfg.avoid : BinaryImage(X.height(), X.width());
  detail::check_keep(X, C);
  detail::check_avoid(X, D);

  BinaryImage current = X;
  for (unsigned r = 1; r <= cfg.r_max; ++r) {
    current = detail::cutting(current, C, BallRadius{r}, cfg.adj, exec, Outside::background);
    current = detail::filling(current, D, BallRadius{r}, cfg.adj, exec, Outside::background);
  }
  return current;
}

inline BinaryImage hasf(const BinaryImage& X, const SmoothingConfig& cfg) {
  Executor exec(cfg.workers, cfg.scheduler);
  return hasf(X, cfg, exec);
}

// Unconstrained smoothing, (8,4) adjacency.
inline BinaryImage smooth(const BinaryImage& X, unsigned r_max, std::size_t workers = 1,
                          Scheduler scheduler = Scheduler::nps) {
  SmoothingConfig cfg;
  cfg.r_max = r_max;
  cfg.workers = workers;
  cfg.scheduler = scheduler;
  return hasf(X, cfg);
}

}  // namespace topsmooth

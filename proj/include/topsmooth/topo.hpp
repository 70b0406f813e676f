#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "edt.hpp"
#include "grid.hpp"
#include "sched.hpp"

namespace topsmooth {

struct TopoClassification {
  int t = 0;      // object components of the punctured 3x3 neighbourhood adjacent to p
  int t_bar = 0;  // background components of the punctured 3x3 neighbourhood adjacent to p
  bool simple = false;

  friend constexpr bool operator==(const TopoClassification&, const TopoClassification&) = default;
};

namespace detail {

// Bit k of a neighbourhood code is the value of p + kNeighborOffsets[k].

constexpr bool positions_adjacent(std::size_t i, std::size_t j, Connectivity k) {
  const int dr = kNeighborOffsets[i].dr - kNeighborOffsets[j].dr;
  const int dc = kNeighborOffsets[i].dc - kNeighborOffsets[j].dc;
  const int ar = dr < 0 ? -dr : dr;
  const int ac = dc < 0 ? -dc : dc;
  if (ar == 0 && ac == 0) return false;
  return k == Connectivity::four ? ar + ac == 1 : (ar <= 1 && ac <= 1);
}

constexpr bool adjacent_to_center(std::size_t i, Connectivity k) {
  return k == Connectivity::eight || i < 4;
}

// Number of k-components of the set encoded in `code` that are k-adjacent to
// the centre. Components are taken inside the punctured neighbourhood only.
constexpr std::uint8_t count_adjacent_components(unsigned code, Connectivity k) {
  std::array<bool, 8> seen{};
  std::uint8_t count = 0;
  for (std::size_t start = 0; start < 8; ++start) {
    if (!((code >> start) & 1u) || seen[start] || !adjacent_to_center(start, k)) continue;
    ++count;
    std::array<std::size_t, 8> stack{};
    std::size_t top = 0;
    stack[top++] = start;
    seen[start] = true;
    while (top > 0) {
      const std::size_t cur = stack[--top];
      for (std::size_t j = 0; j < 8; ++j) {
        if (((code >> j) & 1u) && !seen[j] && positions_adjacent(cur, j, k)) {
          seen[j] = true;
          stack[top++] = j;
        }
      }
    }
  }
  return count;
}

constexpr std::array<std::uint8_t, 256> make_component_table(Connectivity k) {
  std::array<std::uint8_t, 256> table{};
  for (unsigned code = 0; code < 256; ++code) table[code] = count_adjacent_components(code, k);
  return table;
}

inline constexpr auto kComponents4 = make_component_table(Connectivity::four);
inline constexpr auto kComponents8 = make_component_table(Connectivity::eight);

constexpr const std::array<std::uint8_t, 256>& component_table(Connectivity k) {
  return k == Connectivity::four ? kComponents4 : kComponents8;
}

constexpr TopoClassification classify_code(unsigned code, AdjacencyPair adj) {
  const int t = component_table(adj.object())[code & 0xFFu];
  const int t_bar = component_table(adj.background())[~code & 0xFFu];
  return {t, t_bar, t == 1 && t_bar == 1};
}

constexpr std::array<bool, 256> make_simple_table(AdjacencyPair adj) {
  std::array<bool, 256> table{};
  for (unsigned code = 0; code < 256; ++code) table[code] = classify_code(code, adj).simple;
  return table;
}

inline constexpr auto kSimple84 = make_simple_table(AdjacencyPair::eight_four());
inline constexpr auto kSimple48 = make_simple_table(AdjacencyPair::four_eight());

constexpr const std::array<bool, 256>& simple_table(AdjacencyPair adj) {
  return adj.object() == Connectivity::eight ? kSimple84 : kSimple48;
}

inline unsigned neighborhood_code(const std::uint8_t* px, std::size_t height, std::size_t width, std::size_t r,
                                  std::size_t c, std::uint8_t outside) noexcept {
  unsigned code = 0;
  if (r > 0 && c > 0 && r + 1 < height && c + 1 < width) {
    const std::uint8_t* p = px + r * width + c;
    for (std::size_t k = 0; k < 8; ++k) {
      const std::ptrdiff_t off =
          kNeighborOffsets[k].dr * static_cast<std::ptrdiff_t>(width) + kNeighborOffsets[k].dc;
      code |= static_cast<unsigned>(p[off]) << k;
    }
    return code;
  }
  for (std::size_t k = 0; k < 8; ++k) {
    const long rr = static_cast<long>(r) + kNeighborOffsets[k].dr;
    const long cc = static_cast<long>(c) + kNeighborOffsets[k].dc;
    const bool inside = rr >= 0 && cc >= 0 && rr < static_cast<long>(height) && cc < static_cast<long>(width);
    const std::uint8_t v =
        inside ? px[static_cast<std::size_t>(rr) * width + static_cast<std::size_t>(cc)] : outside;
    code |= static_cast<unsigned>(v) << k;
  }
  return code;
}

}  // namespace detail

// 3x3 neighbourhood code of p; out-of-window neighbours read as `outside`.
inline unsigned neighborhood_code(const BinaryImage& img, Point p, Outside outside = Outside::background) {
  require_inside(img, p);
  return detail::neighborhood_code(img.pixels().data(), img.height(), img.width(), static_cast<std::size_t>(p.row),
                                   static_cast<std::size_t>(p.col), static_cast<std::uint8_t>(outside));
}

inline TopoClassification connectivity_numbers(const BinaryImage& img, Point p, AdjacencyPair adj,
                                               Outside outside = Outside::background) {
  return detail::classify_code(neighborhood_code(img, p, outside), adj);
}

// Whether removing the object pixel p preserves topology (T = T̄ = 1).
inline bool is_simple(const BinaryImage& img, Point p, AdjacencyPair adj, Outside outside = Outside::background) {
  require_inside(img, p);
  if (!img[p]) throw std::invalid_argument("is_simple: point is not an object pixel");
  return detail::simple_table(adj)[neighborhood_code(img, p, outside)];
}

struct ThinningOptions {
  // Bound on propagation depth: initial candidates are generation 0 and the
  // neighbours re-examined after a removal in generation g are generation g+1.
  // Only generations below max_iter are processed. Unset runs to stability.
  std::optional<std::size_t> max_iter;
  Outside outside = Outside::background;
};

// Ultimate constrained skeleton of Z: repeatedly removes the simple point of
// Z \ W with the smallest (priority, row-major index) until none is left.
//
// Candidates live in a priority-ordered stack with a per-pixel membership
// flag. After each removal the removed point goes through a second stack whose
// 8-neighbours are pushed back as candidates. The initial detection scan runs
// on the executor; removals are sequential.
inline BinaryImage homotopic_thin(const BinaryImage& Z, const BinaryImage& W, const DistanceMap& priority,
                                  AdjacencyPair adj, Executor& exec, const ThinningOptions& opts = {}) {
  require_same_shape(Z, W, "homotopic_thin");
  if (priority.height() != Z.height() || priority.width() != Z.width()) {
    throw std::invalid_argument("homotopic_thin: priority map dimension mismatch");
  }
  if (!is_subset(W, Z)) throw std::invalid_argument("homotopic_thin: constraint set is not contained in Z");

  BinaryImage out = Z;
  if (opts.max_iter && *opts.max_iter == 0) return out;

  const std::size_t h = out.height();
  const std::size_t w = out.width();
  const auto& simple = detail::simple_table(adj);
  const auto outside = static_cast<std::uint8_t>(opts.outside);
  std::uint8_t* px = out.pixels().data();
  const std::uint8_t* keep = W.pixels().data();

  struct Candidate {
    Distance priority;
    std::uint32_t index;
    std::uint32_t generation;
  };
  // Min-heap on (priority, index).
  auto later = [](const Candidate& a, const Candidate& b) {
    return a.priority != b.priority ? a.priority > b.priority : a.index > b.index;
  };

  // Detection: destructible points of the input, gathered per row.
  std::vector<std::vector<std::uint32_t>> found(h);
  TaskSet row_costs;
  row_costs.costs.resize(h);
  for (std::size_t r = 0; r < h; ++r) {
    std::size_t n = 0;
    for (std::size_t c = 0; c < w; ++c) n += px[r * w + c] & (keep[r * w + c] ^ 1);
    row_costs.costs[r] = static_cast<double>(n + 1);
  }
  exec.run(exec.assign(row_costs), [&](std::size_t r) {
    for (std::size_t c = 0; c < w; ++c) {
      const std::size_t i = r * w + c;
      if (px[i] && !keep[i] && simple[detail::neighborhood_code(px, h, w, r, c, outside)]) {
        found[r].push_back(static_cast<std::uint32_t>(i));
      }
    }
  });

  std::vector<Candidate> stack1;
  std::vector<std::uint8_t> in_stack1(out.size(), 0);
  for (const auto& row : found) {
    for (std::uint32_t i : row) {
      stack1.push_back({priority[i], i, 0});
      in_stack1[i] = 1;
    }
  }
  std::make_heap(stack1.begin(), stack1.end(), later);

  std::vector<std::uint32_t> stack2;
  while (!stack1.empty()) {
    std::pop_heap(stack1.begin(), stack1.end(), later);
    const Candidate x = stack1.back();
    stack1.pop_back();
    in_stack1[x.index] = 0;
    if (opts.max_iter && x.generation >= *opts.max_iter) continue;

    const std::size_t r = x.index / w;
    const std::size_t c = x.index % w;
    if (px[x.index] && !keep[x.index] && simple[detail::neighborhood_code(px, h, w, r, c, outside)]) {
      px[x.index] = 0;
      stack2.push_back(x.index);
    }

    while (!stack2.empty()) {
      const std::uint32_t y = stack2.back();
      stack2.pop_back();
      const long yr = static_cast<long>(y / w);
      const long yc = static_cast<long>(y % w);
      for (const auto& off : detail::kNeighborOffsets) {
        const long vr = yr + off.dr;
        const long vc = yc + off.dc;
        if (vr < 0 || vc < 0 || vr >= static_cast<long>(h) || vc >= static_cast<long>(w)) continue;
        const auto v = static_cast<std::uint32_t>(static_cast<std::size_t>(vr) * w + static_cast<std::size_t>(vc));
        if (px[v] && !keep[v] && !in_stack1[v]) {
          in_stack1[v] = 1;
          stack1.push_back({priority[v], v, x.generation + 1});
          std::push_heap(stack1.begin(), stack1.end(), later);
        }
      }
    }
  }
  return out;
}

inline BinaryImage homotopic_thin(const BinaryImage& Z, const BinaryImage& W, const DistanceMap& priority,
                                  AdjacencyPair adj, const ThinningOptions& opts = {}) {
  Executor sequential(1);
  return homotopic_thin(Z, W, priority, adj, sequential, opts);
}

// Grows Y inside V by adding points that are simple for the complement, in
// increasing priority, until stability. Computed as the thinning of the
// complement under the dual adjacency. `outside` is the convention for Y; the
// complement sees the opposite one.
inline BinaryImage homotopic_thicken(const BinaryImage& Y, const BinaryImage& V, const DistanceMap& priority,
                                     AdjacencyPair adj, Executor& exec, Outside outside = Outside::background) {
  require_same_shape(Y, V, "homotopic_thicken");
  if (!is_subset(Y, V)) throw std::invalid_argument("homotopic_thicken: Y is not contained in V");
  ThinningOptions opts;
  opts.outside = flip(outside);
  return complement(homotopic_thin(complement(Y), complement(V), priority, adj.dual(), exec, opts));
}

inline BinaryImage homotopic_thicken(const BinaryImage& Y, const BinaryImage& V, const DistanceMap& priority,
                                     AdjacencyPair adj, Outside outside = Outside::background) {
  Executor sequential(1);
  return homotopic_thicken(Y, V, priority, adj, sequential, outside);
}

}  // namespace topsmooth

#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topsmooth {

struct Point {
  int row = 0;
  int col = 0;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

enum class Connectivity : int { four = 4, eight = 8 };

// Which value the plane outside the image window takes. Sets are treated as
// subsets of Z^2; an object image has background outside, its complement has
// object outside.
enum class Outside : std::uint8_t { background = 0, object = 1 };

constexpr Outside flip(Outside o) noexcept {
  return o == Outside::background ? Outside::object : Outside::background;
}

// (n, n̄): object adjacency and the complementary background adjacency.
class AdjacencyPair {
 public:
  constexpr AdjacencyPair() = default;

  static constexpr AdjacencyPair eight_four() { return AdjacencyPair(Connectivity::eight); }
  static constexpr AdjacencyPair four_eight() { return AdjacencyPair(Connectivity::four); }

  static AdjacencyPair from_ints(int n, int n_bar) {
    if (n == 8 && n_bar == 4) return eight_four();
    if (n == 4 && n_bar == 8) return four_eight();
    throw std::invalid_argument("adjacency pair must be (8,4) or (4,8), got (" +
                                std::to_string(n) + "," + std::to_string(n_bar) + ")");
  }

  constexpr Connectivity object() const noexcept { return object_; }
  constexpr Connectivity background() const noexcept {
    return object_ == Connectivity::eight ? Connectivity::four : Connectivity::eight;
  }
  // Swaps n and n̄; the adjacency seen by the complement.
  constexpr AdjacencyPair dual() const noexcept { return AdjacencyPair(background()); }

  friend constexpr bool operator==(AdjacencyPair, AdjacencyPair) = default;

 private:
  constexpr explicit AdjacencyPair(Connectivity object) : object_(object) {}
  Connectivity object_ = Connectivity::eight;
};

namespace detail {

struct Offset {
  int dr;
  int dc;
};

// First four entries are the 4-neighbours, the rest are diagonals.
inline constexpr std::array<Offset, 8> kNeighborOffsets{{
    {-1, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, -1}, {-1, 1}, {1, -1}, {1, 1}}};

constexpr std::size_t offset_count(Connectivity c) noexcept {
  return c == Connectivity::four ? 4 : 8;
}

}  // namespace detail

// Row-major {0,1} image. 1 is object, 0 is background.
class BinaryImage {
 public:
  BinaryImage() = default;

  BinaryImage(std::size_t height, std::size_t width, std::uint8_t fill = 0)
      : height_(height), width_(width), pixels_(height * width, fill ? 1 : 0) {
    if (height == 0 || width == 0) {
      throw std::invalid_argument("image dimensions must be positive");
    }
  }

  // Builds an image from text rows; '1', '#', 'X' mark object pixels, anything
  // else is background. All rows must have the same length.
  static BinaryImage from_rows(std::initializer_list<std::string_view> rows) {
    if (rows.size() == 0) throw std::invalid_argument("no rows");
    BinaryImage img(rows.size(), rows.begin()->size());
    std::size_t r = 0;
    for (auto row : rows) {
      if (row.size() != img.width_) throw std::invalid_argument("ragged rows");
      for (std::size_t c = 0; c < row.size(); ++c) {
        const char ch = row[c];
        img.pixels_[r * img.width_ + c] = (ch == '1' || ch == '#' || ch == 'X') ? 1 : 0;
      }
      ++r;
    }
    return img;
  }

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  bool contains(Point p) const noexcept {
    return p.row >= 0 && p.col >= 0 && static_cast<std::size_t>(p.row) < height_ &&
           static_cast<std::size_t>(p.col) < width_;
  }

  std::size_t index(Point p) const noexcept {
    return static_cast<std::size_t>(p.row) * width_ + static_cast<std::size_t>(p.col);
  }

  std::uint8_t operator()(std::size_t r, std::size_t c) const noexcept {
    return pixels_[r * width_ + c];
  }
  std::uint8_t operator[](Point p) const noexcept { return pixels_[index(p)]; }

  std::uint8_t at(Point p) const {
    if (!contains(p)) throw std::out_of_range("point outside image");
    return pixels_[index(p)];
  }

  // Reads p, returning the outside value when p is off the window.
  std::uint8_t get_or(Point p, Outside outside) const noexcept {
    return contains(p) ? pixels_[index(p)] : static_cast<std::uint8_t>(outside);
  }

  void set(std::size_t r, std::size_t c, bool v) noexcept { pixels_[r * width_ + c] = v ? 1 : 0; }
  void set(Point p, bool v) { set(static_cast<std::size_t>(p.row), static_cast<std::size_t>(p.col), v); }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  std::span<const std::uint8_t> row(std::size_t r) const noexcept {
    return std::span<const std::uint8_t>(pixels_).subspan(r * width_, width_);
  }
  std::span<std::uint8_t> row(std::size_t r) noexcept {
    return std::span<std::uint8_t>(pixels_).subspan(r * width_, width_);
  }

  std::size_t count() const noexcept {
    return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
  }

  bool same_shape(const BinaryImage& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> pixels_;
};

inline void require_same_shape(const BinaryImage& a, const BinaryImage& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.height()) + "x" + std::to_string(a.width()) +
                                " vs " + std::to_string(b.height()) + "x" +
                                std::to_string(b.width()) + ")");
  }
}

inline void require_inside(const BinaryImage& img, Point p) {
  if (!img.contains(p)) {
    throw std::out_of_range("point (" + std::to_string(p.row) + "," + std::to_string(p.col) +
                            ") outside " + std::to_string(img.height()) + "x" +
                            std::to_string(img.width()) + " image");
  }
}

// Γ*_n(p) clipped to the image window. The first four entries (when present)
// are the 4-neighbours.
inline std::vector<Point> neighbors(Point p, std::size_t height, std::size_t width, Connectivity n) {
  if (p.row < 0 || p.col < 0 || static_cast<std::size_t>(p.row) >= height ||
      static_cast<std::size_t>(p.col) >= width) {
    throw std::out_of_range("neighbors: point outside image");
  }
  std::vector<Point> out;
  out.reserve(detail::offset_count(n));
  for (std::size_t k = 0; k < detail::offset_count(n); ++k) {
    const Point q{p.row + detail::kNeighborOffsets[k].dr, p.col + detail::kNeighborOffsets[k].dc};
    if (q.row >= 0 && q.col >= 0 && static_cast<std::size_t>(q.row) < height &&
        static_cast<std::size_t>(q.col) < width) {
      out.push_back(q);
    }
  }
  return out;
}

inline std::vector<Point> neighbors(Point p, const BinaryImage& img, Connectivity n) {
  return neighbors(p, img.height(), img.width(), n);
}

inline BinaryImage complement(const BinaryImage& img) {
  BinaryImage out = img;
  for (auto& v : out.pixels()) v ^= 1;
  return out;
}

inline BinaryImage set_union(const BinaryImage& a, const BinaryImage& b) {
  require_same_shape(a, b, "set_union");
  BinaryImage out = a;
  auto dst = out.pixels();
  auto src = b.pixels();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
  return out;
}

inline BinaryImage set_intersection(const BinaryImage& a, const BinaryImage& b) {
  require_same_shape(a, b, "set_intersection");
  BinaryImage out = a;
  auto dst = out.pixels();
  auto src = b.pixels();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
  return out;
}

inline bool is_subset(const BinaryImage& a, const BinaryImage& b) {
  require_same_shape(a, b, "is_subset");
  auto x = a.pixels();
  auto y = b.pixels();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && !y[i]) return false;
  }
  return true;
}

inline bool are_disjoint(const BinaryImage& a, const BinaryImage& b) {
  require_same_shape(a, b, "are_disjoint");
  auto x = a.pixels();
  auto y = b.pixels();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && y[i]) return false;
  }
  return true;
}

// Copies img into a larger canvas with `margin` pixels of `fill` on every side.
inline BinaryImage pad(const BinaryImage& img, std::size_t margin, bool fill) {
  BinaryImage out(img.height() + 2 * margin, img.width() + 2 * margin, fill ? 1 : 0);
  for (std::size_t r = 0; r < img.height(); ++r) {
    auto src = img.row(r);
    std::copy(src.begin(), src.end(), out.row(r + margin).begin() + static_cast<std::ptrdiff_t>(margin));
  }
  return out;
}

inline BinaryImage crop(const BinaryImage& img, std::size_t top, std::size_t left, std::size_t height,
                        std::size_t width) {
  if (top + height > img.height() || left + width > img.width()) {
    throw std::out_of_range("crop: window exceeds image");
  }
  BinaryImage out(height, width);
  for (std::size_t r = 0; r < height; ++r) {
    auto src = img.row(top + r).subspan(left, width);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

struct ComponentLabels {
  std::size_t count = 0;
  // 0 for pixels outside the selected set, 1..count otherwise.
  std::vector<std::uint32_t> labels;
};

// Labels the n-connected components of X (foreground = true) or of its
// complement within the window. Labels are assigned in row-major order of each
// component's first pixel.
inline ComponentLabels connected_components(const BinaryImage& img, Connectivity n, bool foreground = true) {
  const std::uint8_t want = foreground ? 1 : 0;
  const int h = static_cast<int>(img.height());
  const int w = static_cast<int>(img.width());
  ComponentLabels out;
  out.labels.assign(img.size(), 0);
  std::vector<std::size_t> stack;
  const std::size_t k = detail::offset_count(n);
  for (std::size_t start = 0; start < img.size(); ++start) {
    if (img.pixels()[start] != want || out.labels[start] != 0) continue;
    const auto label = static_cast<std::uint32_t>(++out.count);
    out.labels[start] = label;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      const int r = static_cast<int>(cur / img.width());
      const int c = static_cast<int>(cur % img.width());
      for (std::size_t j = 0; j < k; ++j) {
        const int rr = r + detail::kNeighborOffsets[j].dr;
        const int cc = c + detail::kNeighborOffsets[j].dc;
        if (rr < 0 || cc < 0 || rr >= h || cc >= w) continue;
        const std::size_t q = static_cast<std::size_t>(rr) * img.width() + static_cast<std::size_t>(cc);
        if (img.pixels()[q] == want && out.labels[q] == 0) {
          out.labels[q] = label;
          stack.push_back(q);
        }
      }
    }
  }
  return out;
}

inline std::size_t component_count(const BinaryImage& img, Connectivity n, bool foreground = true) {
  return connected_components(img, n, foreground).count;
}

struct TopologyCounts {
  std::size_t object = 0;
  std::size_t background = 0;

  friend bool operator==(const TopologyCounts&, const TopologyCounts&) = default;
};

// Component counts of X under n-adjacency and of its complement in Z^2 under
// n̄-adjacency. The background count includes the unbounded component outside
// the window, so it is always at least 1.
inline TopologyCounts topology_counts(const BinaryImage& img, AdjacencyPair adj) {
  const BinaryImage framed = pad(img, 1, false);
  return {component_count(img, adj.object(), true), component_count(framed, adj.background(), false)};
}

// Number of object/background 4-adjacent pixel pairs, counting the window
// border as background.
inline std::size_t perimeter(const BinaryImage& img) {
  std::size_t edges = 0;
  const int h = static_cast<int>(img.height());
  const int w = static_cast<int>(img.width());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!img(static_cast<std::size_t>(r), static_cast<std::size_t>(c))) continue;
      for (std::size_t j = 0; j < 4; ++j) {
        const Point q{r + detail::kNeighborOffsets[j].dr, c + detail::kNeighborOffsets[j].dc};
        if (!img.get_or(q, Outside::background)) ++edges;
      }
    }
  }
  return edges;
}

}  // namespace topsmooth

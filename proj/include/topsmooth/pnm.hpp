#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edt.hpp"
#include "grid.hpp"

namespace topsmooth {

enum class PbmFormat { p1, p4 };
enum class PgmEncoding { p2, p5 };

// squared: raw squared distances, maxval = largest finite value.
// root: round(sqrt(d)) clamped to 255; INF renders as 255.
enum class PgmMode { squared, root };

class PnmError : public std::runtime_error {
 public:
  PnmError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

struct PbmImage {
  BinaryImage image;
  PbmFormat format = PbmFormat::p4;
};

struct PgmImage {
  std::size_t width = 0;
  std::size_t height = 0;
  unsigned maxval = 0;
  std::vector<unsigned> values;
};

namespace detail {

class PnmReader {
 public:
  explicit PnmReader(std::string_view data) : data_(data) {}

  std::size_t pos() const noexcept { return pos_; }
  bool done() const noexcept { return pos_ >= data_.size(); }

  std::string_view magic() {
    if (data_.size() < 2) throw PnmError("file too short for a netpbm magic number", 0);
    pos_ = 2;
    return data_.substr(0, 2);
  }

  static bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  }

  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (is_space(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long read_uint(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    unsigned long v = 0;
    while (pos_ < data_.size() && data_[pos_] >= '0' && data_[pos_] <= '9') {
      v = v * 10 + static_cast<unsigned long>(data_[pos_] - '0');
      if (v > 0xFFFFFFFFul) throw PnmError(std::string(what) + " is too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (done()) throw PnmError(std::string("unexpected end of file while reading ") + what, pos_);
      throw PnmError(std::string("expected ") + what, pos_);
    }
    return v;
  }

  // The single whitespace byte separating the header from a binary raster.
  void header_terminator() {
    if (done() || !is_space(data_[pos_])) throw PnmError("expected whitespace after header", pos_);
    ++pos_;
  }

  char next_char() {
    if (done()) throw PnmError("truncated raster", pos_);
    return data_[pos_++];
  }

  std::string_view take(std::size_t n) {
    if (data_.size() - pos_ < n) {
      throw PnmError("truncated raster: need " + std::to_string(n) + " bytes, have " +
                         std::to_string(data_.size() - pos_),
                     pos_);
    }
    auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw std::runtime_error("error writing '" + path + "'");
}

inline void check_dims(unsigned long w, unsigned long h, std::size_t offset) {
  if (w == 0 || h == 0) throw PnmError("image dimensions must be positive", offset);
  if (w > 32767 || h > 32767) throw PnmError("image dimensions exceed 32767", offset);
}

}  // namespace detail

// PBM (P1 or P4). A 1 bit (black) is an object pixel.
inline PbmImage parse_pbm(std::string_view bytes) {
  detail::PnmReader in(bytes);
  const auto magic = in.magic();
  PbmImage out;
  if (magic == "P1") {
    out.format = PbmFormat::p1;
  } else if (magic == "P4") {
    out.format = PbmFormat::p4;
  } else {
    throw PnmError("not a PBM file (magic must be P1 or P4)", 0);
  }
  const std::size_t dims_at = in.pos();
  const auto w = in.read_uint("width");
  const auto h = in.read_uint("height");
  detail::check_dims(w, h, dims_at);
  out.image = BinaryImage(h, w);

  if (out.format == PbmFormat::p1) {
    for (std::size_t i = 0; i < out.image.size(); ++i) {
      in.skip_space_and_comments();
      const std::size_t at = in.pos();
      const char c = in.next_char();
      if (c != '0' && c != '1') throw PnmError(std::string("invalid P1 pixel '") + c + "'", at);
      out.image.pixels()[i] = c == '1' ? 1 : 0;
    }
    return out;
  }

  in.header_terminator();
  const std::size_t stride = (w + 7) / 8;
  const auto raster = in.take(stride * h);
  for (std::size_t r = 0; r < h; ++r) {
    auto row = out.image.row(r);
    for (std::size_t c = 0; c < w; ++c) {
      const auto byte = static_cast<unsigned char>(raster[r * stride + c / 8]);
      row[c] = (byte >> (7 - c % 8)) & 1u;
    }
  }
  return out;
}

inline BinaryImage read_pbm(const std::string& path) { return parse_pbm(detail::read_file(path)).image; }

inline PbmImage read_pbm_with_format(const std::string& path) { return parse_pbm(detail::read_file(path)); }

inline std::string encode_pbm(const BinaryImage& img, PbmFormat format) {
  std::string out = (format == PbmFormat::p1 ? "P1\n" : "P4\n") + std::to_string(img.width()) + " " +
                    std::to_string(img.height()) + "\n";
  if (format == PbmFormat::p1) {
    // At most 35 digits per line keeps lines under 70 characters.
    for (std::size_t r = 0; r < img.height(); ++r) {
      auto row = img.row(r);
      for (std::size_t c = 0; c < row.size(); ++c) {
        out.push_back(row[c] ? '1' : '0');
        const bool line_end = c + 1 == row.size() || (c + 1) % 35 == 0;
        out.push_back(line_end ? '\n' : ' ');
      }
    }
    return out;
  }
  const std::size_t stride = (img.width() + 7) / 8;
  std::string raster(stride * img.height(), '\0');
  for (std::size_t r = 0; r < img.height(); ++r) {
    auto row = img.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c]) raster[r * stride + c / 8] = static_cast<char>(raster[r * stride + c / 8] | (0x80 >> (c % 8)));
    }
  }
  return out + raster;
}

inline void write_pbm(const BinaryImage& img, const std::string& path, PbmFormat format = PbmFormat::p4) {
  detail::write_file(path, encode_pbm(img, format));
}

inline std::string encode_pgm(const DistanceMap& dmap, PgmMode mode, PgmEncoding encoding = PgmEncoding::p5) {
  std::vector<unsigned> values(dmap.size());
  unsigned maxval = 255;
  if (mode == PgmMode::squared) {
    Distance largest = 0;
    for (Distance v : dmap.values()) {
      if (v != dmap.inf()) largest = std::max(largest, v);
    }
    if (largest > 65535) {
      throw std::range_error("squared distances up to " + std::to_string(largest) +
                             " exceed the PGM limit of 65535; use the root mode");
    }
    maxval = std::max<unsigned>(1, largest);
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = dmap[i] == dmap.inf() ? maxval : dmap[i];
    }
  } else {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (dmap[i] == dmap.inf()) {
        values[i] = 255;
      } else {
        values[i] = std::min<unsigned>(255, static_cast<unsigned>(std::lround(std::sqrt(double(dmap[i])))));
      }
    }
  }

  std::string out = (encoding == PgmEncoding::p2 ? "P2\n" : "P5\n") + std::to_string(dmap.width()) + " " +
                    std::to_string(dmap.height()) + "\n" + std::to_string(maxval) + "\n";
  if (encoding == PgmEncoding::p2) {
    for (std::size_t r = 0; r < dmap.height(); ++r) {
      for (std::size_t c = 0; c < dmap.width(); ++c) {
        out += std::to_string(values[r * dmap.width() + c]);
        out.push_back(c + 1 == dmap.width() ? '\n' : ' ');
      }
    }
    return out;
  }
  for (unsigned v : values) {
    if (maxval > 255) out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v & 0xFF));
  }
  return out;
}

inline void write_pgm(const DistanceMap& dmap, const std::string& path, PgmMode mode,
                      PgmEncoding encoding = PgmEncoding::p5) {
  detail::write_file(path, encode_pgm(dmap, mode, encoding));
}

inline PgmImage parse_pgm(std::string_view bytes) {
  detail::PnmReader in(bytes);
  const auto magic = in.magic();
  if (magic != "P2" && magic != "P5") throw PnmError("not a PGM file (magic must be P2 or P5)", 0);
  PgmImage out;
  const std::size_t dims_at = in.pos();
  out.width = in.read_uint("width");
  out.height = in.read_uint("height");
  detail::check_dims(out.width, out.height, dims_at);
  const std::size_t maxval_at = in.pos();
  const auto maxval = in.read_uint("maxval");
  if (maxval == 0 || maxval > 65535) throw PnmError("maxval must be in [1, 65535]", maxval_at);
  out.maxval = static_cast<unsigned>(maxval);
  out.values.resize(out.width * out.height);
  if (magic == "P2") {
    for (auto& v : out.values) {
      const std::size_t at = in.pos();
      v = static_cast<unsigned>(in.read_uint("sample"));
      if (v > out.maxval) throw PnmError("sample exceeds maxval", at);
    }
    return out;
  }
  in.header_terminator();
  const std::size_t bytes_per = out.maxval > 255 ? 2 : 1;
  const auto raster = in.take(out.values.size() * bytes_per);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const auto hi = static_cast<unsigned char>(raster[i * bytes_per]);
    out.values[i] = bytes_per == 2 ? (hi << 8) | static_cast<unsigned char>(raster[i * 2 + 1]) : hi;
  }
  return out;
}

}  // namespace topsmooth

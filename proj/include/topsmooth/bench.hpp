#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "grid.hpp"
#include "sched.hpp"
#include "smooth.hpp"

namespace topsmooth {

struct BenchmarkRecord {
  std::size_t height = 0;
  std::size_t width = 0;
  unsigned r_max = 0;
  std::size_t workers = 1;
  Scheduler scheduler = Scheduler::nps;
  double t_min_s = 0.0;     // t_p, best of `repetitions`
  double t_serial_s = 0.0;  // t_s, same binary at one worker
  std::size_t repetitions = 0;
  bool min_of_k = true;
  std::uint64_t output_hash = 0;

  double speedup() const { return t_serial_s / t_min_s; }
  // Ψ(n) = t_s / (n t_p)
  double efficiency() const { return t_serial_s / (static_cast<double>(workers) * t_min_s); }
  double images_per_second() const { return 1.0 / t_min_s; }
};

struct BenchmarkOptions {
  unsigned r_max = 5;
  std::vector<std::size_t> workers{1, 2, 4, 8};
  std::vector<Scheduler> schedulers{Scheduler::nps, Scheduler::system};
  std::size_t repetitions = 5;
};

// FNV-1a over the dimensions and pixels.
inline std::uint64_t image_hash(const BinaryImage& img) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 1099511628211ull;
    }
  };
  mix(img.height());
  mix(img.width());
  for (auto v : img.pixels()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

// Minimum wall time of `reps` calls, monotonic clock.
inline double min_wall_time(std::size_t reps, const std::function<void()>& fn) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < std::max<std::size_t>(1, reps); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

inline std::vector<BenchmarkRecord> run_benchmark(const BinaryImage& img, const BenchmarkOptions& opts) {
  for (auto w : opts.workers) require_workers(w);

  SmoothingConfig cfg;
  cfg.r_max = opts.r_max;

  auto time_config = [&](std::size_t workers, Scheduler scheduler, std::uint64_t& hash) {
    Executor exec(workers, scheduler);
    BinaryImage result;
    const double t = min_wall_time(opts.repetitions, [&] { result = hasf(img, cfg, exec); });
    hash = image_hash(result);
    return t;
  };

  std::uint64_t serial_hash = 0;
  const double t_serial = time_config(1, Scheduler::nps, serial_hash);

  std::vector<BenchmarkRecord> out;
  for (Scheduler s : opts.schedulers) {
    for (std::size_t w : opts.workers) {
      BenchmarkRecord rec;
      rec.height = img.height();
      rec.width = img.width();
      rec.r_max = opts.r_max;
      rec.workers = w;
      rec.scheduler = s;
      rec.repetitions = opts.repetitions;
      rec.t_serial_s = t_serial;
      rec.t_min_s = time_config(w, s, rec.output_hash);
      out.push_back(rec);
    }
  }
  return out;
}

inline constexpr const char* kBenchmarkCsvHeader = "scheduler,workers,t_min_s,speedup,efficiency";

inline std::string benchmark_csv(const std::vector<BenchmarkRecord>& records) {
  std::ostringstream os;
  os << kBenchmarkCsvHeader << '\n';
  os.setf(std::ios::fixed);
  for (const auto& r : records) {
    os.precision(6);
    os << to_string(r.scheduler) << ',' << r.workers << ',' << r.t_min_s << ',';
    os.precision(4);
    os << r.speedup() << ',' << r.efficiency() << '\n';
  }
  return os.str();
}

}  // namespace topsmooth

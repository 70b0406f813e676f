#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace topsmooth {

// nps: non-preemptive descending-cost dealing with a persistent pool.
// strided: worker t takes t, t + P, t + 2P, ... with a persistent pool.
// system: contiguous chunks on threads spawned per phase, no balancing; the
// benchmark baseline.
enum class Scheduler { nps, strided, system };

inline std::string_view to_string(Scheduler s) {
  switch (s) {
    case Scheduler::nps: return "nps";
    case Scheduler::strided: return "strided";
    case Scheduler::system: return "system";
  }
  return "?";
}

inline Scheduler parse_scheduler(std::string_view name) {
  if (name == "nps") return Scheduler::nps;
  if (name == "strided") return Scheduler::strided;
  if (name == "system") return Scheduler::system;
  throw std::invalid_argument("unknown scheduler '" + std::string(name) + "' (expected nps|strided|system)");
}

struct TaskSet {
  std::vector<double> costs;

  static TaskSet uniform(std::size_t count) { return TaskSet{std::vector<double>(count, 1.0)}; }
  std::size_t size() const noexcept { return costs.size(); }
};

struct TaskAssignment {
  std::vector<std::vector<std::size_t>> buckets;

  std::size_t workers() const noexcept { return buckets.size(); }

  std::size_t task_count() const noexcept {
    std::size_t n = 0;
    for (const auto& b : buckets) n += b.size();
    return n;
  }

  // Throws unless the buckets partition [0, count).
  void validate(std::size_t count) const {
    if (buckets.empty()) throw std::invalid_argument("assignment has no workers");
    std::vector<std::uint8_t> seen(count, 0);
    for (const auto& b : buckets) {
      for (std::size_t idx : b) {
        if (idx >= count) {
          throw std::invalid_argument("assignment index " + std::to_string(idx) + " out of range [0," +
                                      std::to_string(count) + ")");
        }
        if (seen[idx]) throw std::invalid_argument("assignment repeats index " + std::to_string(idx));
        seen[idx] = 1;
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      if (!seen[i]) throw std::invalid_argument("assignment misses index " + std::to_string(i));
    }
  }

  bool is_partition_of(std::size_t count) const {
    try {
      validate(count);
      return true;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
};

inline void require_workers(std::size_t workers) {
  if (workers == 0) throw std::invalid_argument("worker count must be at least 1");
}

// Per-worker task cap ⌈|T|/|P|⌉.
inline std::size_t bucket_cap(std::size_t tasks, std::size_t workers) {
  require_workers(workers);
  return (tasks + workers - 1) / workers;
}

// Tasks ordered by cost, largest first; equal costs keep index order.
inline std::vector<std::size_t> order_by_cost(const TaskSet& tasks) {
  std::vector<std::size_t> order(tasks.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return tasks.costs[a] > tasks.costs[b]; });
  return order;
}

// Sum of the m largest costs, m = ⌈|T|/|P|⌉: the worst load any single worker
// can receive under a cap of m tasks.
inline double worst_case_load(const TaskSet& tasks, std::size_t workers) {
  const std::size_t m = bucket_cap(tasks.size(), workers);
  const auto order = order_by_cost(tasks);
  double sum = 0.0;
  for (std::size_t j = 0; j < m && j < order.size(); ++j) sum += tasks.costs[order[j]];
  return sum;
}

inline double bucket_load(const TaskSet& tasks, std::span<const std::size_t> bucket) {
  double sum = 0.0;
  for (std::size_t idx : bucket) sum += tasks.costs[idx];
  return sum;
}

// Non-preemptive scheduler: sort by cost descending, then deal round-robin.
// Worker k receives sorted ranks k, k + P, k + 2P, ...
inline TaskAssignment nps_assign(const TaskSet& tasks, std::size_t workers) {
  require_workers(workers);
  for (double c : tasks.costs) {
    if (!std::isfinite(c) || c < 0.0) throw std::invalid_argument("task costs must be finite and non-negative");
  }
  TaskAssignment out;
  out.buckets.resize(workers);
  const auto order = order_by_cost(tasks);
  for (auto& b : out.buckets) b.reserve(bucket_cap(tasks.size(), workers));
  for (std::size_t rank = 0; rank < order.size(); ++rank) out.buckets[rank % workers].push_back(order[rank]);
  return out;
}

inline TaskAssignment strided_partition(std::size_t count, std::size_t workers) {
  require_workers(workers);
  TaskAssignment out;
  out.buckets.resize(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    for (std::size_t i = t; i < count; i += workers) out.buckets[t].push_back(i);
  }
  return out;
}

// Consecutive chunks of ⌈count/workers⌉; trailing workers may get less or
// nothing.
inline TaskAssignment contiguous_partition(std::size_t count, std::size_t workers) {
  require_workers(workers);
  TaskAssignment out;
  out.buckets.resize(workers);
  const std::size_t chunk = bucket_cap(count, workers);
  for (std::size_t i = 0; i < count; ++i) out.buckets[i / chunk].push_back(i);
  return out;
}

// Maps an assignment over tiles of `tile` consecutive indices back onto the
// underlying index range [0, count).
inline TaskAssignment expand_tiles(const TaskAssignment& tiles, std::size_t tile, std::size_t count) {
  TaskAssignment out;
  out.buckets.resize(tiles.workers());
  for (std::size_t w = 0; w < tiles.workers(); ++w) {
    for (std::size_t t : tiles.buckets[w]) {
      const std::size_t begin = t * tile;
      const std::size_t end = std::min(count, begin + tile);
      for (std::size_t i = begin; i < end; ++i) out.buckets[w].push_back(i);
    }
  }
  return out;
}

class PhaseError : public std::runtime_error {
 public:
  PhaseError(std::size_t index, const std::string& what)
      : std::runtime_error("task " + std::to_string(index) + " failed: " + what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

namespace detail {

// Fixed set of threads woken once per phase. The calling thread acts as
// worker 0, so a pool for P workers owns P - 1 threads.
class ThreadPool {
 public:
  explicit ThreadPool(std::size_t workers) {
    require_workers(workers);
    threads_.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) threads_.emplace_back([this, w] { loop(w); });
  }

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  ~ThreadPool() {
    {
      std::lock_guard lock(mu_);
      stop_ = true;
    }
    start_cv_.notify_all();
    for (auto& t : threads_) t.join();
  }

  std::size_t size() const noexcept { return threads_.size() + 1; }

  // Runs job(w) for every worker w and returns once all have finished.
  void run(const std::function<void(std::size_t)>& job) {
    {
      std::lock_guard lock(mu_);
      job_ = &job;
      pending_ = threads_.size();
      ++generation_;
    }
    start_cv_.notify_all();
    job(0);
    std::unique_lock lock(mu_);
    done_cv_.wait(lock, [this] { return pending_ == 0; });
    job_ = nullptr;
  }

 private:
  void loop(std::size_t w) {
    std::uint64_t seen = 0;
    std::unique_lock lock(mu_);
    for (;;) {
      start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      const auto* job = job_;
      lock.unlock();
      (*job)(w);
      lock.lock();
      if (--pending_ == 0) done_cv_.notify_one();
    }
  }

  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::uint64_t generation_ = 0;
  std::size_t pending_ = 0;
  bool stop_ = false;
};

}  // namespace detail

// Owns the workers for a pipeline and splits/distributes/merges phases over
// them. Every phase ends with a full barrier.
class Executor {
 public:
  explicit Executor(std::size_t workers = 1, Scheduler scheduler = Scheduler::nps)
      : workers_(workers), scheduler_(scheduler) {
    require_workers(workers);
    if (workers > 1 && scheduler != Scheduler::system) pool_ = std::make_unique<detail::ThreadPool>(workers);
  }

  std::size_t workers() const noexcept { return workers_; }
  Scheduler scheduler() const noexcept { return scheduler_; }

  TaskAssignment assign(const TaskSet& tasks) const {
    switch (scheduler_) {
      case Scheduler::nps: return nps_assign(tasks, workers_);
      case Scheduler::strided: return strided_partition(tasks.size(), workers_);
      case Scheduler::system: return contiguous_partition(tasks.size(), workers_);
    }
    return nps_assign(tasks, workers_);
  }

  TaskAssignment assign(std::size_t count) const { return assign(TaskSet::uniform(count)); }

  // Runs body(index) for every index of the assignment. Bodies must write to
  // disjoint locations. On failure the remaining tasks are abandoned and the
  // lowest failing index seen is reported through PhaseError.
  template <typename Body>
  void run(const TaskAssignment& assignment, Body&& body) {
    std::atomic<bool> failed{false};
    std::mutex err_mu;
    std::optional<std::size_t> fail_index;
    std::string fail_what;

    const std::size_t lanes = std::max<std::size_t>(1, std::min(workers_, assignment.workers()));
    auto lane = [&](std::size_t w) {
      for (std::size_t b = w; b < assignment.workers(); b += lanes) {
        for (std::size_t idx : assignment.buckets[b]) {
          if (failed.load(std::memory_order_relaxed)) return;
          try {
            body(idx);
          } catch (const std::exception& e) {
            std::lock_guard lock(err_mu);
            if (!fail_index || idx < *fail_index) {
              fail_index = idx;
              fail_what = e.what();
            }
            failed.store(true, std::memory_order_relaxed);
            return;
          }
        }
      }
    };

    if (lanes == 1) {
      lane(0);
    } else if (scheduler_ == Scheduler::system) {
      std::vector<std::jthread> spawned;
      spawned.reserve(lanes - 1);
      for (std::size_t w = 1; w < lanes; ++w) spawned.emplace_back(lane, w);
      lane(0);
    } else {
      const std::function<void(std::size_t)> job = [&](std::size_t w) {
        if (w < lanes) lane(w);
      };
      pool_->run(job);
    }

    if (fail_index) throw PhaseError(*fail_index, fail_what);
  }

  // Splits [0, count) with the configured scheduler and runs body on it.
  template <typename Body>
  void for_each(std::size_t count, Body&& body) {
    run(assign(count), std::forward<Body>(body));
  }

 private:
  std::size_t workers_;
  Scheduler scheduler_;
  std::unique_ptr<detail::ThreadPool> pool_;
};

// One-shot phase on a private executor sized to the assignment.
template <typename Body>
void run_phase(const TaskAssignment& assignment, Body&& body) {
  Executor exec(std::max<std::size_t>(1, assignment.workers()), Scheduler::nps);
  exec.run(assignment, std::forward<Body>(body));
}

inline std::size_t default_worker_count() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

}  // namespace topsmooth

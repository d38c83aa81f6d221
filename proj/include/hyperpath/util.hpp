#pragma once
// Small shared helpers: deterministic seeding, wall-clock timing, and a
// fixed-size thread pool used for the embarrassingly parallel sweeps.

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace hyperpath {

// splitmix64: stateless mixer, used to derive per-task seeds so that results
// never depend on thread scheduling.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ (0x9e3779b97f4a7c15ULL + b));
}

class SplitMix {
public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
  std::uint64_t state_;
};

class Timer {
public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

// Runs fn(i) for i in [0, count) on `jobs` threads.  Tasks are claimed from a
// shared atomic counter; callers store results into pre-sized slots indexed
// by i, so the output is independent of scheduling.
void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& fn);

// Job count resolution: explicit value if > 0, else HYPERPATH_JOBS, else 1.
unsigned resolve_jobs(unsigned requested);

}  // namespace hyperpath

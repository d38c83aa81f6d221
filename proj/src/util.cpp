#include "hyperpath/util.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>

namespace hyperpath {

void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::size_t err_index = count;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (i < err_index) {  // lowest index wins, independent of scheduling
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  unsigned nthreads = jobs < count ? jobs : static_cast<unsigned>(count);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned w = 0; w < nthreads; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

unsigned resolve_jobs(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HYPERPATH_JOBS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace hyperpath

#include "ustatboot/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ustatboot {

unsigned default_threads() {
  if (const char* env = std::getenv("USTATBOOT_THREADS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) {
        return static_cast<unsigned>(value);
      }
    } catch (const std::exception&) {
      // fall through to hardware concurrency
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

unsigned resolve_threads(unsigned requested) { return requested == 0 ? default_threads() : requested; }

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (count == 0) {
    return;
  }
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) {
        return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) {
    pool.emplace_back(worker);
  }
  worker();
  pool.clear();
  if (error) {
    std::rethrow_exception(error);
  }
}

}  // namespace ustatboot

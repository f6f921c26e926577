#pragma once

#include <atomic>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace kdon {

// Keyed once-computation cache.  The first requester of a key computes the
// value while other threads wait on the shared future; afterwards lookups are
// a single map probe.  Readers only ever see a completed entry.
template <typename K, typename V>
class Memo {
 public:
  const V& get(const K& key, const std::function<V()>& make) const {
    std::shared_future<std::shared_ptr<const V>> fut;
    {
      std::unique_lock<std::mutex> lock(m_);
      auto it = map_.find(key);
      if (it != map_.end()) {
        fut = it->second;
      } else {
        std::promise<std::shared_ptr<const V>> prom;
        fut = prom.get_future().share();
        map_.emplace(key, fut);
        lock.unlock();
        try {
          prom.set_value(std::make_shared<V>(make()));
        } catch (...) {
          prom.set_exception(std::current_exception());
        }
      }
    }
    return *fut.get();
  }

 private:
  mutable std::mutex m_;
  mutable std::map<K, std::shared_future<std::shared_ptr<const V>>> map_;
};

// Run fn(i) for i in [0, n) on up to `jobs` threads (0 = hardware default).
// Exceptions are collected and the first one rethrown after completion.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int jobs = 0) {
  if (n == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nthreads = jobs > 0 ? static_cast<std::size_t>(jobs) : (hw ? hw : 1);
  nthreads = std::min(nthreads, n);
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace kdon

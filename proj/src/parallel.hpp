#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lpnq::detail {

  // Calls f(0), ..., f(count - 1) on up to jobs threads. Results must be
  // written to per-index slots by f, which keeps the outcome independent of
  // the schedule. The first exception thrown is rethrown.
  template <typename F>
  void parallel_for(size_t count, unsigned jobs, F&& f) {
    if (jobs <= 1 || count < 2) {
      for (size_t i = 0; i < count; ++i) {
        f(i);
      }
      return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr  error;
    std::mutex          mtx;
    auto                worker = [&]() {
      while (true) {
        size_t i = next++;
        if (i >= count) {
          return;
        }
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mtx);
          if (!error) {
            error = std::current_exception();
          }
          next = count;
        }
      }
    };
    std::vector<std::thread> threads;
    size_t const nthreads = std::min<size_t>(jobs, count);
    for (size_t t = 0; t < nthreads; ++t) {
      threads.emplace_back(worker);
    }
    for (auto& t : threads) {
      t.join();
    }
    if (error) {
      std::rethrow_exception(error);
    }
  }

}  // namespace lpnq::detail

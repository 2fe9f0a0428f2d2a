#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace patavoid {

/// Computes `compute(i)` for i in [0, count) on `workers` threads and hands results to
/// `emit(i, result)` on the calling thread in index order, as soon as each prefix is
/// complete. Output is therefore independent of the worker count.
template <typename Compute, typename Emit>
void ordered_parallel_map(std::size_t count, std::size_t workers, Compute compute, Emit emit) {
  using Result = std::invoke_result_t<Compute&, std::size_t>;
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) emit(i, compute(i));
    return;
  }

  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::vector<char> done(count, 0);
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> cancelled{false};

  auto work = [&] {
    for (std::size_t i = next++; i < count && !cancelled; i = next++) {
      std::optional<Result> result;
      std::exception_ptr error;
      try {
        result.emplace(compute(i));
      } catch (...) {
        error = std::current_exception();
      }
      {
        std::lock_guard lock(mutex);
        slots[i] = std::move(result);
        errors[i] = error;
        done[i] = 1;
      }
      ready.notify_all();
    }
  };

  std::vector<std::jthread> pool;
  const auto threads = std::min(workers, count);
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);

  try {
    for (std::size_t i = 0; i < count; ++i) {
      std::optional<Result> result;
      {
        std::unique_lock lock(mutex);
        ready.wait(lock, [&] { return done[i] != 0; });
        if (errors[i]) std::rethrow_exception(errors[i]);
        result = std::move(slots[i]);
        slots[i].reset();
      }
      emit(i, std::move(*result));
    }
  } catch (...) {
    cancelled = true;
    throw;
  }
}

}  // namespace patavoid

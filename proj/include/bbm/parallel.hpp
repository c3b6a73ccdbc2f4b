#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "bbm/random.hpp"

namespace bbm {

/// How Monte-Carlo loops are scheduled. The worker count never affects
/// results: work is cut into fixed chunks, chunk c always draws from
/// substream c, and partial results are merged in chunk order.
struct Execution {
  unsigned workers = 1;

  static Execution hardware() {
    return {std::max(1u, std::thread::hardware_concurrency())};
  }
};

/// Samples per chunk. Part of the reproducibility contract: changing it
/// changes every Monte-Carlo result.
inline constexpr std::size_t kChunkSize = 4096;

/// Streaming mean/variance (Welford), mergeable with Chan's update.
struct MeanAccumulator {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const MeanAccumulator& other) noexcept {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double n_a = static_cast<double>(count);
    const double n_b = static_cast<double>(other.count);
    const double n = n_a + n_b;
    const double delta = other.mean - mean;
    mean += delta * n_b / n;
    m2 += other.m2 + delta * delta * n_a * n_b / n;
    count += other.count;
  }

  [[nodiscard]] double variance() const noexcept {
    return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
  }
  [[nodiscard]] double std_error() const noexcept {
    return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
  }
};

/// Runs `body(chunk_index)` for every chunk in [0, chunks) on `exec.workers`
/// threads. The first exception thrown by any chunk is rethrown.
template <class Body>
void for_each_chunk(std::size_t chunks, const Execution& exec, Body&& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, exec.workers), chunks));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      try {
        body(c);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Mean of `samples` i.i.d. draws of `draw(Stream&)`.
template <class Draw>
MeanAccumulator monte_carlo_mean(std::size_t samples, const Stream& rng, const Execution& exec,
                                 Draw&& draw) {
  const std::size_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  std::vector<MeanAccumulator> partial(chunks);
  for_each_chunk(chunks, exec, [&](std::size_t c) {
    Stream local = rng.substream(c);
    const std::size_t begin = c * kChunkSize;
    const std::size_t end = std::min(samples, begin + kChunkSize);
    MeanAccumulator acc;
    for (std::size_t i = begin; i < end; ++i) acc.add(draw(local));
    partial[c] = acc;
  });
  MeanAccumulator total;
  for (const auto& acc : partial) total.merge(acc);
  return total;
}

}  // namespace bbm

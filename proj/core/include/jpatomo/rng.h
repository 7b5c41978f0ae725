// Copyright 2026 The jpatomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JPATOMO_RNG_H_
#define JPATOMO_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace jpatomo {

/// Number of draws generated from one random stream. Long runs are split into
/// blocks of this size, each with its own engine seeded from (seed, block
/// index), so the concatenated output does not depend on how blocks are
/// distributed across threads.
inline constexpr std::size_t kBlockSize = std::size_t{1} << 16;

std::uint64_t splitmix64(std::uint64_t x);

/// Engine for stream `stream` of the run seeded with `seed`. The `domain` tag
/// separates unrelated consumers of the same user seed.
std::mt19937_64 block_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t domain = 0);

/// Number of blocks needed to cover `n` draws.
constexpr std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

/// Runs `fn(block_index)` or `fn(block_index, worker_index)` for every block in
/// [0, blocks) on up to `threads` worker threads (0 = hardware concurrency).
/// Blocks are claimed in increasing order; worker indices are dense in
/// [0, worker_count(blocks, threads)).
template <typename Fn>
void parallel_blocks(std::size_t blocks, unsigned threads, Fn&& fn);

unsigned resolve_threads(unsigned requested);

inline unsigned worker_count(std::size_t blocks, unsigned threads) {
  const unsigned w = resolve_threads(threads);
  if (blocks == 0) return 1;
  return blocks < w ? static_cast<unsigned>(blocks) : w;
}

}  // namespace jpatomo

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace jpatomo {

template <typename Fn>
void parallel_blocks(std::size_t blocks, unsigned threads, Fn&& fn) {
  auto call = [&fn](std::size_t b, unsigned w) {
    if constexpr (std::is_invocable_v<Fn&, std::size_t, unsigned>) {
      fn(b, w);
    } else {
      fn(b);
    }
  };
  const unsigned workers = worker_count(blocks, threads);
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) call(b, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (;;) {
          const std::size_t b = next.fetch_add(1);
          if (b >= blocks) return;
          try {
            call(b, w);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(blocks);
            return;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace jpatomo

#endif  // JPATOMO_RNG_H_

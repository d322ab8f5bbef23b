#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace compsem {

// Splits [0, count) into contiguous shards, one worker thread per shard.
// fn(shard_index, begin, end) must write only to state owned by its shard;
// callers merge shard results in shard order afterwards, which keeps the
// combined outcome identical for any worker count. The first exception
// thrown by any shard is rethrown on the calling thread.
inline void parallel_shards(
    std::size_t count, std::size_t workers,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  if (workers == 0) workers = 1;
  if (workers > count) workers = count == 0 ? 1 : count;
  if (workers <= 1) {
    fn(0, 0, count);
    return;
  }
  const std::size_t base = count / workers;
  const std::size_t extra = count % workers;
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  std::size_t begin = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t len = base + (w < extra ? 1 : 0);
    const std::size_t end = begin + len;
    threads.emplace_back([&fn, &errors, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    begin = end;
  }
  for (std::thread& t : threads) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace compsem

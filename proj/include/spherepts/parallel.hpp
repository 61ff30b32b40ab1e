#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace spherepts {

// Number of worker threads used by internal parallel loops. 0 selects the
// hardware concurrency.
void set_thread_count(unsigned count);
unsigned thread_count();

// Calls body(block_index) for every block in [0, num_blocks), spreading the
// blocks over worker threads in a fixed round-robin order. Callers that
// reduce results must do so by block index so the outcome does not depend on
// scheduling.
template <typename Body>
void parallel_blocks(std::size_t num_blocks, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), num_blocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < num_blocks; ++b) body(b);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t b = w; b < num_blocks; b += workers) body(b);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace spherepts

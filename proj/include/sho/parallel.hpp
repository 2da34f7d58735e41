#pragma once

#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace sho {

// Serial execution can be forced with SHO_NO_PARALLEL=1.
inline bool parallel_disabled() {
  const char* v = std::getenv("SHO_NO_PARALLEL");
  return v != nullptr && v[0] != '\0' && !(v[0] == '0' && v[1] == '\0');
}

// Run body(i) for i in [0, count) on a small worker pool.  Tasks must be
// independent; callers keep output deterministic by writing into
// index-addressed slots.  The first worker exception is rethrown.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  if (count == 0) return;
  const unsigned hardware = std::thread::hardware_concurrency();
  const std::size_t workers =
      parallel_disabled() || hardware <= 1
          ? 1
          : std::min<std::size_t>(hardware, count);

  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : failures)
    if (e) std::rethrow_exception(e);
}

}  // namespace sho

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "kloos/errors.hpp"

namespace kloos {

/// Worker count from KLOOS_JOBS, falling back to 1.
inline unsigned jobs_from_env() {
  const char* raw = std::getenv("KLOOS_JOBS");
  if (raw == nullptr || *raw == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw DomainError("KLOOS_JOBS must be an integer in 1..1024");
  return static_cast<unsigned>(v);
}

/// Applies fn to every item on up to `jobs` threads. Results keep the input order, so the
/// output does not depend on scheduling. The first exception (by item index) is rethrown.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, Fn fn, unsigned jobs) {
  using R = decltype(fn(items.front()));
  std::vector<std::optional<R>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        slots[i].emplace(fn(items[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(1u, jobs), items.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(items.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace kloos

#ifndef SKBFORGE_PARALLEL_H_
#define SKBFORGE_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace skbforge {

// Applies fn(i) for i in [0, n) on up to `jobs` threads and returns results in
// index order. If any call throws, the exception from the lowest failing index
// is rethrown, so behaviour does not depend on the worker count.
template <typename Fn>
auto parallel_map(std::size_t n, int jobs, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using Result = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<Result> results(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    run(0, n);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(run, begin, end);
    }
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace skbforge

#endif  // SKBFORGE_PARALLEL_H_

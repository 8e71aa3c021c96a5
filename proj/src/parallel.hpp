#ifndef CYLSLE_SRC_PARALLEL_HPP
#define CYLSLE_SRC_PARALLEL_HPP

#include <exception>
#include <thread>
#include <vector>

namespace cylsle::detail {

// Runs fn(worker) for worker = 0..workers-1 on separate threads and rethrows
// the first exception (by worker index).
template <typename Fn>
void run_workers(int workers, Fn&& fn) {
  if (workers == 1) {
    fn(0);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        fn(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace cylsle::detail

#endif  // CYLSLE_SRC_PARALLEL_HPP

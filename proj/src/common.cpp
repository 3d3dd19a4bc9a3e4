#include "tracelab/common.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace tracelab {

namespace {
std::atomic<unsigned> g_threads{0};
constexpr i64 kChunk = 64;
}  // namespace

void set_num_threads(unsigned n) { g_threads = n; }

unsigned num_threads() {
  unsigned n = g_threads.load();
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

void parallel_for(i64 n, const std::function<void(i64)>& f) {
  if (n <= 0) return;
  unsigned nt = std::min<i64>(num_threads(), n);
  if (nt <= 1) {
    for (i64 i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<i64> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  auto worker = [&] {
    for (;;) {
      i64 i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
        next = n;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

cplx parallel_sum(i64 n, const std::function<cplx(i64)>& f) {
  if (n <= 0) return {};
  i64 chunks = (n + kChunk - 1) / kChunk;
  std::vector<cplx> partial(chunks);
  parallel_for(chunks, [&](i64 ch) {
    cplx acc{};
    i64 hi = std::min(n, (ch + 1) * kChunk);
    for (i64 i = ch * kChunk; i < hi; ++i) acc += f(i);
    partial[ch] = acc;
  });
  cplx total{};
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace tracelab

#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace collatz::detail {

// Splits the inclusive range [lo, hi] into at most `parts` contiguous,
// non-empty subranges of near-equal size, in ascending order.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> split_range(std::uint64_t lo,
                                                                        std::uint64_t hi,
                                                                        unsigned parts) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> chunks;
  if (hi < lo) return chunks;
  std::uint64_t total = hi - lo + 1;
  std::uint64_t n = parts < 1 ? 1 : parts;
  if (n > total) n = total;
  std::uint64_t base = total / n;
  std::uint64_t extra = total % n;
  std::uint64_t at = lo;
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint64_t len = base + (i < extra ? 1 : 0);
    chunks.emplace_back(at, at + len - 1);
    at += len;
  }
  return chunks;
}

// Runs worker(chunk_lo, chunk_hi) over each subrange — one thread per
// subrange when parts > 1 — and returns the results in range order, so the
// merged outcome is independent of the partition count.
template <class Result, class Worker>
std::vector<Result> run_chunked(std::uint64_t lo, std::uint64_t hi, unsigned parts, Worker worker) {
  auto chunks = split_range(lo, hi, parts);
  std::vector<Result> results(chunks.size());
  if (chunks.size() <= 1) {
    if (!chunks.empty()) results[0] = worker(chunks[0].first, chunks[0].second);
    return results;
  }
  std::vector<std::exception_ptr> errors(chunks.size());
  std::vector<std::thread> pool;
  pool.reserve(chunks.size());
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    pool.emplace_back([&, i] {
      try {
        results[i] = worker(chunks[i].first, chunks[i].second);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace collatz::detail

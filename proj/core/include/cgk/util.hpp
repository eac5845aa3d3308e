#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

namespace cgk {

/// Maximum worker threads, capped by the CGK_THREADS environment variable.
int thread_cap();

/// Splits [0, count) into chunks, runs fn(begin, end) per chunk (possibly in
/// parallel) and returns the per-chunk results in chunk order, so reductions
/// are deterministic regardless of thread count.
template <typename Result, typename ChunkFn>
std::vector<Result> parallel_chunk_map(std::size_t count, ChunkFn fn,
                                       std::size_t min_chunk = 1024) {
  std::size_t workers = static_cast<std::size_t>(thread_cap());
  std::size_t chunks = count == 0 ? 0 : std::min(workers, (count + min_chunk - 1) / min_chunk);
  if (chunks <= 1) {
    std::vector<Result> out;
    if (count > 0) out.push_back(fn(std::size_t{0}, count));
    return out;
  }
  std::vector<Result> out(chunks);
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  std::size_t per = count / chunks, extra = count % chunks, begin = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t len = per + (c < extra ? 1 : 0);
    std::size_t end = begin + len;
    pool.emplace_back([&out, fn, c, begin, end] { out[c] = fn(begin, end); });
    begin = end;
  }
  for (auto& t : pool) t.join();
  return out;
}

/// 128-bit FNV-1a style mix, used for dedup signatures.
struct Fnv128 {
  std::uint64_t lo = 1469598103934665603ull;
  std::uint64_t hi = 1099511628211ull;
  void feed(std::uint64_t v) {
    lo = (lo ^ v) * 1099511628211ull;
    hi = (hi ^ ((v << 17) | (v >> 47))) * 0x100000001b3ull;
  }
  bool operator==(const Fnv128&) const = default;
  bool operator<(const Fnv128& o) const { return lo != o.lo ? lo < o.lo : hi < o.hi; }
};

std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace cgk

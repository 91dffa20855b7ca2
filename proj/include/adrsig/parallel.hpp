#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace adrsig {

/// 0 means "use the hardware concurrency".
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, n) into at most `threads` contiguous chunks and runs
/// `fn(begin, end, chunk)` for each, one thread per chunk. Chunk boundaries
/// depend only on n and the chunk count, so callers that merge per-chunk
/// results in chunk order get scheduling-independent output.
template <typename Fn>
std::size_t parallel_chunks(std::size_t n, unsigned threads, Fn&& fn) {
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(resolve_threads(threads), n));
    const std::size_t step = (n + chunks - 1) / std::max<std::size_t>(chunks, 1);
    if (chunks == 1) {
        fn(std::size_t{0}, n, std::size_t{0});
        return 1;
    }
    std::vector<std::jthread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = std::min(n, c * step);
        const std::size_t end = std::min(n, begin + step);
        pool.emplace_back([&fn, begin, end, c] { fn(begin, end, c); });
    }
    return chunks;
}

}  // namespace adrsig

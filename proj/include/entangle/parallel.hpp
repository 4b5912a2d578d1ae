#ifndef ENTANGLE_PARALLEL_HPP
#define ENTANGLE_PARALLEL_HPP

#include <atomic>
#include <thread>
#include <vector>

namespace entangle {

inline unsigned resolve_threads(int requested) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (requested <= 0) return hw;
    return static_cast<unsigned>(requested);
}

// Splits [lo, hi) into fixed-size chunks and runs fn(chunk_lo, chunk_hi) on a
// worker pool. Results come back indexed by chunk, so any merge done in chunk
// order is independent of the thread count. The chunk layout depends only on
// the range, never on `threads`.
template <class R, class Fn>
std::vector<R> run_chunked(long lo, long hi, unsigned threads, Fn fn) {
    std::vector<R> results;
    if (hi <= lo) return results;
    const long n = hi - lo;
    const long chunk = std::max<long>(1, n / 64);
    const long nchunks = (n + chunk - 1) / chunk;
    results.resize(static_cast<size_t>(nchunks));

    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= nchunks) return;
            const long a = lo + i * chunk;
            const long b = std::min(hi, a + chunk);
            results[static_cast<size_t>(i)] = fn(a, b);
        }
    };

    const unsigned nthreads = std::min<unsigned>(threads, static_cast<unsigned>(nchunks));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return results;
}

}  // namespace entangle

#endif

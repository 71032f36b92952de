#ifndef VACBOUND_REDUCE_HPP
#define VACBOUND_REDUCE_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace vacbound {

/* Deterministic floating-point reduction.
   The summation tree depends only on the element count, never on the
   worker count, so results are bit-stable across runs and across
   --threads settings.  Parallel helpers split work into a fixed number
   of logical chunks (kChunks) and merge partials in chunk order. */

inline constexpr std::size_t kChunks = 64;

inline double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// Evaluates f(i) for i in [0, n) and pairwise-sums the results with a
// topology fixed by n alone.  n_threads only controls physical
// parallelism over the fixed chunk grid.
double det_transform_sum(std::size_t n, const std::function<double(std::size_t)>& f,
                         unsigned n_threads = 1);

// Runs body(chunk_index) for each of the kChunks logical chunks on up to
// n_threads workers.  Chunk indices are stable; bodies must not share
// mutable state except via their own slot.
void for_each_chunk(std::size_t n_chunks, const std::function<void(std::size_t)>& body,
                    unsigned n_threads);

inline std::pair<std::size_t, std::size_t> chunk_range(std::size_t n, std::size_t chunk,
                                                       std::size_t n_chunks) {
    const std::size_t lo = n * chunk / n_chunks;
    const std::size_t hi = n * (chunk + 1) / n_chunks;
    return {lo, hi};
}

}  // namespace vacbound

#endif

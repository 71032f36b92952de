#include "vacbound/reduce.hpp"

#include <atomic>

namespace vacbound {

void for_each_chunk(std::size_t n_chunks, const std::function<void(std::size_t)>& body,
                    unsigned n_threads) {
    if (n_threads <= 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) body(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            body(c);
        }
    };
    std::vector<std::thread> pool;
    const unsigned nt = std::min<unsigned>(n_threads, static_cast<unsigned>(n_chunks));
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

double det_transform_sum(std::size_t n, const std::function<double(std::size_t)>& f,
                         unsigned n_threads) {
    if (n == 0) return 0.0;
    const std::size_t n_chunks = std::min(kChunks, n);
    std::vector<double> partials(n_chunks, 0.0);
    for_each_chunk(n_chunks, [&](std::size_t c) {
        auto [lo, hi] = chunk_range(n, c, n_chunks);
        std::vector<double> vals;
        vals.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) vals.push_back(f(i));
        partials[c] = pairwise_sum(vals);
    }, n_threads);
    return pairwise_sum(partials);
}

}  // namespace vacbound

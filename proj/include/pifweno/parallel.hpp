// Deterministic data-parallel loop: static partition of [0, n) into
// contiguous chunks, one worker thread per chunk. Workers write disjoint
// data, so results are bitwise independent of the worker count.
#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace pifweno {

template <class Fn>
void parallel_for(long long n, int threads, Fn&& fn) {
    if (n <= 0) return;
    int nt = std::max(1, threads);
    nt = static_cast<int>(std::min<long long>(nt, n));
    if (nt == 1) {
        fn(0LL, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    const long long chunk = (n + nt - 1) / nt;
    for (int t = 1; t < nt; ++t) {
        long long b = t * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    fn(0, std::min(n, chunk));
    for (auto& th : pool) th.join();
}

}  // namespace pifweno
